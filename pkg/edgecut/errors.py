from typing import Any, Dict, Optional


class EdgeCutError(ValueError):
    """
    Domain error with a short machine-readable code.
    The CLI turns it into exit status 1 plus a structured JSON body.
    """

    def __init__(self, code: str, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "message": self.message, "details": self.details}
