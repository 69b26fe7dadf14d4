#pragma once

#include <stdexcept>
#include <string>

namespace relclass {

// exit codes used by the CLI: 1 violation, 2 input, 3 budget
enum class ErrKind { Input = 2, Violation = 1, Budget = 3, Internal = 4 };

struct Error : std::runtime_error {
    std::string name;
    ErrKind kind;
    Error(std::string n, ErrKind k, const std::string& msg)
        : std::runtime_error(n + ": " + msg), name(std::move(n)), kind(k) {}
};

#define RELCLASS_ERROR(NAME, KIND)                                             \
    struct NAME : Error {                                                      \
        explicit NAME(const std::string& m = "") : Error(#NAME, KIND, m) {}    \
    };

RELCLASS_ERROR(NonSquarefree, ErrKind::Input)
RELCLASS_ERROR(DegreeUnsupported, ErrKind::Input)
RELCLASS_ERROR(MixedFields, ErrKind::Input)
RELCLASS_ERROR(NotTotallyNegative, ErrKind::Input)
RELCLASS_ERROR(NotIntegral, ErrKind::Input)
RELCLASS_ERROR(DegenerateForm, ErrKind::Input)
RELCLASS_ERROR(NotFundamental, ErrKind::Input)
RELCLASS_ERROR(CriterionFails, ErrKind::Input)
RELCLASS_ERROR(PreconditionFailed, ErrKind::Input)
RELCLASS_ERROR(TruncationTooLarge, ErrKind::Input)
RELCLASS_ERROR(OutOfRegion, ErrKind::Input)
RELCLASS_ERROR(OutOfTableRange, ErrKind::Input)
RELCLASS_ERROR(NonQuadraticCharacter, ErrKind::Input)
RELCLASS_ERROR(LevelNotSquarefree, ErrKind::Input)
RELCLASS_ERROR(InsufficientCoefficients, ErrKind::Input)
RELCLASS_ERROR(StrategyUnavailable, ErrKind::Input)
RELCLASS_ERROR(LambdaTooSmall, ErrKind::Input)
RELCLASS_ERROR(AssumptionViolated, ErrKind::Input)
RELCLASS_ERROR(ParityFails, ErrKind::Input)
RELCLASS_ERROR(SearchBudgetExceeded, ErrKind::Budget)
RELCLASS_ERROR(NoRepresentedValueFound, ErrKind::Budget)
RELCLASS_ERROR(NoFeasibleLambda, ErrKind::Budget)
RELCLASS_ERROR(DecompositionFailed, ErrKind::Violation)
RELCLASS_ERROR(LemmaViolation, ErrKind::Violation)
RELCLASS_ERROR(InequalityViolated, ErrKind::Violation)
RELCLASS_ERROR(BoundViolated, ErrKind::Violation)
RELCLASS_ERROR(ArithmeticOverflow, ErrKind::Internal)

#undef RELCLASS_ERROR

}  // namespace relclass
