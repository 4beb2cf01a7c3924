from core.validation.experiment import VALIDATION_SCHEMA as EXPERIMENT_SCHEMA

CONFIG_SCHEMA = {
    'debug': {
        'type': 'boolean',
        'coerce': lambda value: value.lower() in ('1', 'true', 'yes') if isinstance(value, str) else value,
        'default': False,
        'required': False,
    },
    'log_file': {
        'type': 'string',
        'nullable': True,
        'default': None
    },
    **EXPERIMENT_SCHEMA
}
