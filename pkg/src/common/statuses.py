import enum


class ErrorCode(enum.StrEnum):
    INTERNAL_ERROR = "INTERNAL_ERROR"
    INVALID_PARAMETER = "INVALID_PARAMETER"
    INVALID_INPUT = "INVALID_INPUT"
    INSUFFICIENT_DATA = "INSUFFICIENT_DATA"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    NOT_FOUND = "NOT_FOUND"
    IMPROPERLY_CONFIGURED = "IMPROPERLY_CONFIGURED"
    OUT_OF_DOMAIN = "OUT_OF_DOMAIN"
    CURVATURE_VIOLATION = "CURVATURE_VIOLATION"
    JOINT_LIMIT_VIOLATION = "JOINT_LIMIT_VIOLATION"
    WORKSPACE_VIOLATION = "WORKSPACE_VIOLATION"
    INFEASIBLE_ANCHOR = "INFEASIBLE_ANCHOR"
    PLACEMENT_FAILURE = "PLACEMENT_FAILURE"
    PROTOCOL_VIOLATION = "PROTOCOL_VIOLATION"
