#pragma once

#include <stdexcept>
#include <string>

namespace bw {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define BW_DEFINE_ERROR(Name)                                          \
    struct Name : Error {                                              \
        explicit Name(const std::string& msg = "")                     \
            : Error(std::string(#Name) + (msg.empty() ? "" : ": " + msg)) {} \
    }

// polynomial_core
BW_DEFINE_ERROR(ProportionalInputs);
BW_DEFINE_ERROR(DependentInputs);
BW_DEFINE_ERROR(NoConvergence);
BW_DEFINE_ERROR(KindMismatch);
BW_DEFINE_ERROR(ZeroPolynomial);

// schubert
BW_DEFINE_ERROR(QOutOfRange);
BW_DEFINE_ERROR(CodimensionMismatch);
BW_DEFINE_ERROR(HypothesisViolated);
BW_DEFINE_ERROR(NTooSmall);
BW_DEFINE_ERROR(BoxMismatch);
BW_DEFINE_ERROR(InvalidWeight);

// sl2_rep / gaudin
BW_DEFINE_ERROR(WeightMismatch);
BW_DEFINE_ERROR(CoincidingPoints);
BW_DEFINE_ERROR(IndexError);
BW_DEFINE_ERROR(ZeroVector);
BW_DEFINE_ERROR(BlockTooLarge);

// bethe / wronski / slp
BW_DEFINE_ERROR(OnDiagonal);
BW_DEFINE_ERROR(DegenerateOrbit);
BW_DEFINE_ERROR(ResidueObstruction);
BW_DEFINE_ERROR(SharedRoot);
BW_DEFINE_ERROR(NonDivisible);
BW_DEFINE_ERROR(DegeneratePlane);
BW_DEFINE_ERROR(ReconstructionFailed);
BW_DEFINE_ERROR(ReductionFailed);

// cli
BW_DEFINE_ERROR(UsageError);

#undef BW_DEFINE_ERROR

} // namespace bw
