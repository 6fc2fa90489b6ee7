// A-priori sequences {alpha_n} of regularization parameters with their
// accumulated reciprocal sums s_n = sum_{j<=n} 1/alpha_j (s_{-1} = 0) and the
// validity constants c0 > 1 (s_{n+1} <= c0 s_n) and c1 > 0 (alpha_n <= c1).

#pragma once

#include <string>
#include <vector>

namespace hsnewton {

struct AlphaSchedule {
    std::vector<double> alphas;  // alpha_0, alpha_1, ...
    std::vector<double> sums;    // s_0, s_1, ... (compensated cumulative)
    double c0 = 2.0;             // declared ratio bound, > 1
    double c1 = 1.0;             // declared alpha bound, > 0
    std::string kind;            // "constant", "geometric", ...

    int length() const { return static_cast<int>(alphas.size()); }
    double alpha(int n) const { return alphas.at(static_cast<size_t>(n)); }
    // s_n with the s_{-1} = 0 convention.
    double s(int n) const { return n < 0 ? 0.0 : sums.at(static_cast<size_t>(n)); }
};

// alpha_n = alpha for all n.
AlphaSchedule make_constant_schedule(double alpha, int length);

// alpha_n = alpha0 * q^n with q in (0,1).
AlphaSchedule make_geometric_schedule(double alpha0, double q, int length);

// alpha_n = 1/k_n with the arithmetic integer rule k_n = k0 + step*n.
AlphaSchedule make_reciprocal_schedule(long long k0, long long step, int length);

// alpha_n = 1/k_n with the geometric integer rule k_n = max(1, round(k0*growth^n)).
AlphaSchedule make_reciprocal_geometric_schedule(long long k0, double growth,
                                                 int length);

// Wraps an explicit alpha list with declared constants (no tightening);
// used for validating externally supplied sequences.
AlphaSchedule schedule_from_alphas(std::vector<double> alphas, double c0,
                                   double c1, std::string kind = "custom");

struct ScheduleReport {
    bool pass = false;
    bool strictly_increasing = false;  // s_n strictly increasing, no plateau
    bool ratio_ok = false;             // s_{n+1} <= c0 s_n with declared c0
    bool alpha_bounded = false;        // alpha_n <= c1 with declared c1
    double empirical_c0 = 0.0;         // tightest ratio on the stored prefix
    double empirical_c1 = 0.0;         // max alpha_n
};

// Diagnostic check of the stored prefix against the declared constants.
ScheduleReport validate_schedule(const AlphaSchedule& sched);

}  // namespace hsnewton
