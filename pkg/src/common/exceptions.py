from common.statuses import ErrorCode


class BaseApplicationError(Exception):
    message = "Something went wrong"
    details: str | dict = None
    exit_code = 1
    error_code = ErrorCode.INTERNAL_ERROR

    def __init__(
        self,
        details: str | dict = None,
        message: str = None,
        exit_code: int = None,
        error_code: str = None,
    ):
        self.message = message or self.message
        self.details = details or self.details
        self.exit_code = exit_code or self.exit_code
        self.error_code = error_code or self.error_code
        super().__init__(self.message)

    def __str__(self):
        if self.details:
            return f"{self.message} ({self.details})"

        return self.message


class ImproperlyConfiguredError(BaseApplicationError):
    exit_code = 2
    error_code = ErrorCode.IMPROPERLY_CONFIGURED
    message = "Required configuration is missing or inconsistent"


class NotFoundError(BaseApplicationError):
    exit_code = 2
    error_code = ErrorCode.NOT_FOUND
    message = "Requested object not found."


class InvalidParameterError(BaseApplicationError):
    exit_code = 2
    error_code = ErrorCode.INVALID_PARAMETER
    message = "Requested parameters are not valid."


class InvalidInputError(BaseApplicationError):
    exit_code = 2
    error_code = ErrorCode.INVALID_INPUT
    message = "Input data is not valid."


class InsufficientDataError(BaseApplicationError):
    exit_code = 2
    error_code = ErrorCode.INSUFFICIENT_DATA
    message = "Not enough data to compute the requested value."


class NotApplicableError(BaseApplicationError):
    exit_code = 2
    error_code = ErrorCode.NOT_APPLICABLE
    message = "Requested metric is not applicable to this feature."


class PlanningViolationError(BaseApplicationError):
    """Base for every toolpath constraint that makes a design unprintable"""

    exit_code = 3
    message = "Design violates a planning constraint."

    def __init__(self, feature: int | None = None, arc_position: float | None = None, **kwargs):
        details = kwargs.pop("details", None) or {}
        if isinstance(details, dict):
            details = {"feature": feature, "arc_position": arc_position} | details

        super().__init__(details=details, **kwargs)
        self.feature = feature
        self.arc_position = arc_position


class CurvatureViolationError(PlanningViolationError):
    error_code = ErrorCode.CURVATURE_VIOLATION
    message = "curvature-violation: path radius is below the minimum printable radius"


class JointLimitViolationError(PlanningViolationError):
    error_code = ErrorCode.JOINT_LIMIT_VIOLATION
    message = "joint-limit-violation: tool yaw travel exceeds the wrist rotation range"


class WorkspaceViolationError(PlanningViolationError):
    error_code = ErrorCode.WORKSPACE_VIOLATION
    message = "workspace-violation: tool pose leaves the robot workspace"


class OutOfDomainError(PlanningViolationError):
    error_code = ErrorCode.OUT_OF_DOMAIN
    message = "out-of-domain: path leaves the surface parameter domain"


class InfeasibleAnchorError(BaseApplicationError):
    exit_code = 4
    error_code = ErrorCode.INFEASIBLE_ANCHOR
    message = "infeasible-anchor: anchored tape cannot hold the span tension"


class PlacementFailureError(BaseApplicationError):
    exit_code = 4
    error_code = ErrorCode.PLACEMENT_FAILURE
    message = "placement-failure: tape could not be placed as programmed"


class ProtocolViolationError(BaseApplicationError):
    exit_code = 5
    error_code = ErrorCode.PROTOCOL_VIOLATION
    message = "protocol-violation: robot/PCM I/O sequence is not allowed"
