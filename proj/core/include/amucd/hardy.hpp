#pragma once

#include "amucd/gram.hpp"

namespace amucd {

/// Ordered centers in the open unit disc; repetitions encode derivative
/// multiplicity, so the list maps one-to-one onto a dictionary element list.
struct BlaschkeSystem {
    std::vector<Complex> centers;
};

BlaschkeSystem blaschke_from_elements(const std::vector<DictionaryElement>& elements);

/// B_j(z) = sqrt(1-|z_j|^2)/(1 - conj(z_j) z) * prod_{k<j} (z - z_k)/(1 - conj(z_k) z),
/// the Takenaka-Malmquist function for the first j centers. j is 1-based.
Complex blaschke_eval(const BlaschkeSystem& sys, std::size_t j, Complex z);

/// <f, B_j> for j = 1..n. Exact power-series computation for Taylor signals;
/// local-series derivatives of B_j for kernel combinations.
std::vector<Complex> afd_coefficients(const SignalSpec& f, const BlaschkeSystem& sys);

/// (1-|z|^2) |g_{n+1}(z)|^2 where g_{n+1} is the orthogonal remainder of f
/// divided by the Blaschke product of the accepted centers. Computed entirely
/// through the Takenaka-Malmquist route; agrees with score_candidate.
double hardy_selection_objective(const SignalSpec& f, const GramSystem& state,
                                 Complex z);

}  // namespace amucd
