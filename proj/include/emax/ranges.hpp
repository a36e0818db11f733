// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <vector>

#include "emax/dist.hpp"
#include "emax/gif.hpp"
#include "emax/report.hpp"
#include "emax/seqcheck.hpp"
#include "emax/sequence.hpp"

namespace emax::ranges {

namespace cond {
inline constexpr const char* shift_symmetry = "shift-symmetry";
inline constexpr const char* range_agreement = "range-agreement";
inline constexpr const char* symmetry = "symmetry";
inline constexpr const char* bridge_agreement = "bridge-agreement";
} // namespace cond

// The unique symmetric-around-zero law with the same expected ranges:
// Q_X(u) = (Q_Y(u) - Q_Y((1-u)+)) / 2. Step quantiles stay exact.
dist::DistributionSpec symmetrize(const dist::DistributionSpec& d);

// Two laws share every expected range iff the quantile gap
// h(u) = Q_A(u) - Q_B(u) is symmetric about 1/2, right limits taken at
// declared jumps. Probes a uniform u-grid plus the jump points, and
// cross-checks direct range agreement for k = 2..10.
CheckReport equal_ranges_check(const dist::DistributionSpec& a,
                               const dist::DistributionSpec& b, int grid = 200,
                               const dist::Tolerances& tol = {});

// Relative residual of the weight symmetry identity
// h1(T(y)) = (e^y - 1) h1(y) at one point, T the tail involution.
double symmetry_residual(const gif::IntegralForm& form, double y);

// Symmetry criterion on an integral form. A pass certifies the form's
// sequence is the EMS of a law symmetric around its mean; the
// ers_certificate diagnostic additionally requires g(1) = 0, which
// upgrades the sequence to a full ERS. Default grid: 200 log-spaced
// points in [1e-6, 40] plus the fixed point.
CheckReport symmetry_check(const gif::IntegralForm& form,
                           const std::vector<double>& y_grid = {});

// Weight mass below y minus the mass beyond the tail involution of y;
// both sides agree exactly on forms passing the symmetry criterion.
double measure_balance_gap(const gif::IntegralForm& form, double y);

// A sequence is an ERS exactly when its half is the EMS of a symmetric
// law: runs both checks and reports their agreement.
CheckReport ems_to_ers_bridge(const Sequence& seq,
                              const seqcheck::CheckConfig& cfg = {});

} // namespace emax::ranges
