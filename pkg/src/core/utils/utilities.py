from enum import Enum, EnumMeta


class MetaEnum(EnumMeta):
    def __contains__(cls, item):
        try:
            cls(item)
        except ValueError:
            return False
        return True


class NamedEnum(Enum, metaclass=MetaEnum):
    """Enum whose values are the names used on the command line and in files."""

    def __str__(self):
        return self.value

    @classmethod
    def names(cls) -> list[str]:
        return [member.value for member in cls]


# General Utility Methods
def ceil_div(numerator: int, denominator: int) -> int:
    return -((-numerator) // denominator)
