class IdtnetException(Exception):
    def __init__(self, message, error_code=0, detail=""):
        super(IdtnetException, self).__init__(message)

        self.error_code = error_code
        self.detail = detail
        self.message = message

    def __str__(self) -> str:
        return f"IDT Exception {self.error_code}: {self.message}\n{self.detail}"

    def __iter__(self):
        yield "error_code", self.error_code
        yield "detail", self.detail
        yield "message", self.message

    @property
    def exit_status(self):
        """
        Process exit status for the command line: 2 usage, 3 input, 4 numeric.
        """
        if self.error_code >= 200:
            return self.error_code // 100
        return 1


class ValidationException(IdtnetException):
    """
    Error codes from 200 to 299: a precondition or parameter value was violated.
    """
    def __init__(self, message, error_code=201, detail=""):
        super(ValidationException, self).__init__(message, error_code, detail)

    def __str__(self):
        return f"IDT Validation Exception {self.error_code}: {self.message}\n{self.detail}"


class InputException(IdtnetException):
    """
    Error codes from 300 to 399: an input file is missing or malformed.
    """
    def __init__(self, message, error_code=302, detail=""):
        super(InputException, self).__init__(message, error_code, detail)

    def __str__(self):
        return f"IDT Input Exception {self.error_code}: {self.message}\n{self.detail}"


class NumericException(IdtnetException):
    """
    Error codes from 400 to 499: a computation cannot produce a meaningful value.
    """
    def __init__(self, message, error_code=400, detail=""):
        super(NumericException, self).__init__(message, error_code, detail)

    def __str__(self):
        return f"IDT Numeric Exception {self.error_code}: {self.message}\n{self.detail}"


class ConvergenceException(NumericException):
    """
    Error code 401
    """
    def __init__(self, message, error_code=401, detail=""):
        super(ConvergenceException, self).__init__(message, error_code, detail)

    def __str__(self):
        return f"IDT Convergence Exception {self.error_code}: {self.message}\n{self.detail}"
