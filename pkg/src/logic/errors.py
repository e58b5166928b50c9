from typing import Any, Dict


class AlgebraError(ValueError):
    """
    Erro base do pacote. Cada subclasse tem um código estável, usado pela CLI
    no diagnóstico e no relatório estruturado.
    """
    code = 'ALGEBRA_ERROR'

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        return {'code': self.code, 'message': str(self), **self.details}


class MalformedTableError(AlgebraError):
    code = 'MALFORMED_TABLE'


class OutOfRangeError(AlgebraError):
    code = 'OUT_OF_RANGE'


class NotAssociativeError(AlgebraError):
    code = 'NOT_ASSOCIATIVE'


class InvalidElementError(AlgebraError):
    code = 'INVALID_ELEMENT'


class ZeroPowerError(AlgebraError):
    code = 'ZERO_POWER_IN_SEMIGROUP'


class BadExponentError(AlgebraError):
    code = 'BAD_EXPONENT'


class ConditionViolatedError(AlgebraError):
    code = 'CONDITION_VIOLATED'


class BadWitnessError(AlgebraError):
    code = 'BAD_WITNESS'


class CompositionFailedError(AlgebraError):
    code = 'COMPOSITION_FAILED'


class NotAGroupError(AlgebraError):
    code = 'NOT_A_GROUP'


class OrderCapExceededError(AlgebraError):
    code = 'ORDER_CAP_EXCEEDED'


class InvalidConfigError(AlgebraError):
    code = 'INVALID_CONFIG'


class GoldenFixtureError(AlgebraError):
    code = 'GOLDEN_FIXTURE'
