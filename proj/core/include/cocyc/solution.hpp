#pragma once

#include "cocyc/cochain.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cocyc {

enum class Method { FixedPoint, Variational, Newton, Moulton };

std::string toString(Method method);
/// Accepts "fixedPoint", "variational", "newton", "moulton"; throws DomainError otherwise.
Method methodFromString(const std::string& name);

/// A solved central configuration.
struct CCSolution {
    Configuration configuration;  ///< centred, unit mass-norm
    Masses masses = Masses::equal(1);
    double lambda = 0.0;
    double residualNorm = 0.0;  ///< ccResidual(...).norm, recomputed after the solve
    int iterations = 0;
    Method method = Method::Newton;
    std::vector<std::string> classification;
    std::optional<int> morseIndex;   ///< sphere-restricted Hessian
    std::vector<double> spectrum;    ///< sphere-restricted eigenvalues, ascending
    std::string label;               ///< e.g. the body ordering of a Moulton chamber
};

}  // namespace cocyc
