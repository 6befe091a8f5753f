"""Exception hierarchy shared by every ratcurve module."""


class RatcurveError(Exception):
    """Base class; the CLI maps these to exit code 1."""

    code = "error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


def _make(name, base=RatcurveError, doc=None):
    cls = type(name, (base,), {"code": name, "__doc__": doc})
    return cls


# numfield
DivisionByZero = type("DivisionByZero", (RatcurveError, ZeroDivisionError), {"code": "DivisionByZero"})
FieldMismatch = _make("FieldMismatch")
PrecisionExhausted = _make("PrecisionExhausted")
InvalidField = _make("InvalidField")
ParseError = _make("ParseError", doc="A field, function or point string could not be parsed.")

# ratfunc
ZeroDenominator = _make("ZeroDenominator")
DegenerateTriple = _make("DegenerateTriple")
NotRationalCoefficients = _make("NotRationalCoefficients")
FixedFieldNotRational = _make("FixedFieldNotRational")

# elliptic
SingularCurve = _make("SingularCurve")
CurveMismatch = _make("CurveMismatch")
PointNotOnCurve = _make("PointNotOnCurve")
NotTorsion = _make("NotTorsion")
DualVerificationFailed = _make("DualVerificationFailed")
NotRationalCurve = _make("NotRationalCurve")

# construction
NoLinearFactor = _make("NoLinearFactor")
DegenerateQuotient = _make("DegenerateQuotient")
RealnessFailed = _make("RealnessFailed")
NonRealMoebius = _make("NonRealMoebius")
InsufficientPoints = _make("InsufficientPoints")
PreconditionFailed = _make("PreconditionFailed")

# permcheck
CapExceeded = _make("CapExceeded")
NotTransitive = _make("NotTransitive")
DegreeEven = _make("DegreeEven")
InvalidSigma = _make("InvalidSigma")

# families
NotRootOfUnity = _make("NotRootOfUnity")
BadRho = _make("BadRho")
MissingI = _make("MissingI")
HypothesisViolated = _make("HypothesisViolated")

# cli / output
TooFewSamples = _make("TooFewSamples")
JobError = _make("JobError")
IoError = _make("IoError", doc="An output file could not be written.")
