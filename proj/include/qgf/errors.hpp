#pragma once

#include <stdexcept>
#include <string>

namespace qgf {

// All library failures carry a stable kind string so the CLI can report them.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define QGF_ERROR_KIND(Name)                                                   \
    struct Name : Error {                                                      \
        explicit Name(const std::string& w = "") : Error(#Name, w) {}          \
    }

QGF_ERROR_KIND(DivisionByZero);
QGF_ERROR_KIND(PoleAtPoint);
QGF_ERROR_KIND(NotDivisible);
QGF_ERROR_KIND(TooManyVariables);
QGF_ERROR_KIND(MixedSignAlgebras);
QGF_ERROR_KIND(ObstructionPresent);
QGF_ERROR_KIND(SingularReferencePoint);
QGF_ERROR_KIND(RootOfUnityDegenerate);
QGF_ERROR_KIND(NotOnSingleParameterSurface);
QGF_ERROR_KIND(PairNotAdmissible);
QGF_ERROR_KIND(QFactorialZero);
QGF_ERROR_KIND(CyclicWithoutEpsBound);
QGF_ERROR_KIND(NonUnitConstantTerm);
QGF_ERROR_KIND(NormalizationInconsistent);
QGF_ERROR_KIND(GradingInvalid);
QGF_ERROR_KIND(CyclicTauNotAllowedHere);
QGF_ERROR_KIND(TruncationTooCoarse);
QGF_ERROR_KIND(TruncationInsufficient);
QGF_ERROR_KIND(EpsOutOfDisk);
QGF_ERROR_KIND(InvalidInput);
QGF_ERROR_KIND(ConfigParse);
QGF_ERROR_KIND(UnknownCommand);

#undef QGF_ERROR_KIND

} // namespace qgf
