from core.policies import PolicyKind

DEFAULTS = {
    'd': 2,
    'dimensions': None,
    'n': 1000,
    'mu': 10,
    'mus': None,
    'T': 1000,
    'B': 100,
    'm': 100,
    'profile': 'desk',
    'base_seed': 0,
    'policies': PolicyKind.names(),
    'workers': 1
}

PROFILE_INSTANCES = {
    'desk': 100,
    'full': 1000
}


def to_int(value):
    if value is None or isinstance(value, bool):
        return value
    return int(value)


def to_list(value):
    if isinstance(value, str):
        return [part.strip() for part in value.split(',') if part.strip()]
    return value


def to_int_list(value):
    value = to_list(value)
    if isinstance(value, list):
        return [to_int(part) for part in value]
    return value


VALIDATION_SCHEMA = {
    'd': {
        'type': 'integer',
        'coerce': to_int,
        'min': 1,
        'default': DEFAULTS['d']
    },
    'dimensions': {
        'type': 'list',
        'nullable': True,
        'coerce': to_int_list,
        'minlength': 1,
        'schema': {
            'type': 'integer',
            'min': 1
        },
        'default': DEFAULTS['dimensions']
    },
    'n': {
        'type': 'integer',
        'coerce': to_int,
        'min': 1,
        'default': DEFAULTS['n']
    },
    'mu': {
        'type': 'integer',
        'coerce': to_int,
        'min': 1,
        'default': DEFAULTS['mu']
    },
    'mus': {
        'type': 'list',
        'nullable': True,
        'coerce': to_int_list,
        'minlength': 1,
        'schema': {
            'type': 'integer',
            'min': 1
        },
        'default': DEFAULTS['mus']
    },
    'T': {
        'type': 'integer',
        'coerce': to_int,
        'min': 1,
        'default': DEFAULTS['T']
    },
    'B': {
        'type': 'integer',
        'coerce': to_int,
        'min': 1,
        'default': DEFAULTS['B']
    },
    'm': {
        'type': 'integer',
        'coerce': to_int,
        'min': 1,
        'nullable': True,
        'default': None
    },
    'profile': {
        'type': 'string',
        'allowed': list(PROFILE_INSTANCES),
        'default': DEFAULTS['profile']
    },
    'base_seed': {
        'type': 'integer',
        'coerce': to_int,
        'min': 0,
        'max': 2 ** 64 - 1,
        'default': DEFAULTS['base_seed']
    },
    'policies': {
        'type': 'list',
        'coerce': to_list,
        'minlength': 1,
        'schema': {
            'type': 'string',
            'allowed': PolicyKind.names()
        },
        'default': DEFAULTS['policies']
    },
    'workers': {
        'type': 'integer',
        'coerce': to_int,
        'min': 0,
        'default': DEFAULTS['workers']
    }
}
