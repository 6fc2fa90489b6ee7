#include "hsnewton/schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "hsnewton/numerics.hpp"

namespace hsnewton {

namespace {

AlphaSchedule finish(std::vector<double> alphas, std::string kind) {
    AlphaSchedule sched;
    std::vector<double> recip(alphas.size());
    for (size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0.0) || !std::isfinite(alphas[i]))
            throw std::invalid_argument("make_schedule: alpha values must be positive");
        recip[i] = 1.0 / alphas[i];
    }
    sched.alphas = std::move(alphas);
    sched.sums = compensated_cumsum(recip);
    sched.kind = std::move(kind);

    // Tightest constants valid on the stored prefix.
    double c1 = 0.0;
    for (double a : sched.alphas) c1 = std::max(c1, a);
    double c0 = 1.0 + 1e-12;  // c0 must exceed 1 even for a singleton prefix
    for (size_t n = 0; n + 1 < sched.sums.size(); ++n)
        c0 = std::max(c0, sched.sums[n + 1] / sched.sums[n]);
    sched.c0 = c0;
    sched.c1 = c1;
    return sched;
}

}  // namespace

AlphaSchedule make_constant_schedule(double alpha, int length) {
    if (length < 1) throw std::invalid_argument("make_constant_schedule: length must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("make_constant_schedule: alpha must be > 0");
    return finish(std::vector<double>(static_cast<size_t>(length), alpha), "constant");
}

AlphaSchedule make_geometric_schedule(double alpha0, double q, int length) {
    if (length < 1) throw std::invalid_argument("make_geometric_schedule: length must be >= 1");
    if (!(alpha0 > 0.0)) throw std::invalid_argument("make_geometric_schedule: alpha0 must be > 0");
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("make_geometric_schedule: q must lie in (0, 1)");
    std::vector<double> alphas(static_cast<size_t>(length));
    double a = alpha0;
    for (int n = 0; n < length; ++n) {
        alphas[static_cast<size_t>(n)] = a;
        a *= q;
    }
    return finish(std::move(alphas), "geometric");
}

AlphaSchedule make_reciprocal_schedule(long long k0, long long step, int length) {
    if (length < 1) throw std::invalid_argument("make_reciprocal_schedule: length must be >= 1");
    if (k0 < 1 || step < 0)
        throw std::invalid_argument("make_reciprocal_schedule: need k0 >= 1 and step >= 0");
    std::vector<double> alphas(static_cast<size_t>(length));
    for (int n = 0; n < length; ++n)
        alphas[static_cast<size_t>(n)] = 1.0 / static_cast<double>(k0 + step * n);
    return finish(std::move(alphas), "reciprocal-integers");
}

AlphaSchedule make_reciprocal_geometric_schedule(long long k0, double growth,
                                                 int length) {
    if (length < 1)
        throw std::invalid_argument("make_reciprocal_geometric_schedule: length must be >= 1");
    if (k0 < 1 || !(growth >= 1.0))
        throw std::invalid_argument(
            "make_reciprocal_geometric_schedule: need k0 >= 1 and growth >= 1");
    std::vector<double> alphas(static_cast<size_t>(length));
    for (int n = 0; n < length; ++n) {
        const double kd = static_cast<double>(k0) * std::pow(growth, n);
        const auto k = static_cast<long long>(std::llround(std::max(1.0, kd)));
        alphas[static_cast<size_t>(n)] = 1.0 / static_cast<double>(k);
    }
    return finish(std::move(alphas), "reciprocal-geometric");
}

AlphaSchedule schedule_from_alphas(std::vector<double> alphas, double c0, double c1,
                                   std::string kind) {
    if (alphas.empty()) throw std::invalid_argument("schedule_from_alphas: empty sequence");
    if (!(c0 > 1.0) || !(c1 > 0.0))
        throw std::invalid_argument("schedule_from_alphas: need c0 > 1 and c1 > 0");
    AlphaSchedule sched = finish(std::move(alphas), std::move(kind));
    sched.c0 = c0;
    sched.c1 = c1;
    return sched;
}

ScheduleReport validate_schedule(const AlphaSchedule& sched) {
    ScheduleReport rep;
    rep.strictly_increasing = true;
    rep.ratio_ok = true;
    rep.alpha_bounded = true;
    double prev = 0.0;
    for (int n = 0; n < sched.length(); ++n) {
        const double sn = sched.s(n);
        if (!(sn > prev)) rep.strictly_increasing = false;  // plateau or decrease
        if (n > 0 && sn > sched.c0 * prev) rep.ratio_ok = false;
        if (sched.alpha(n) > sched.c1) rep.alpha_bounded = false;
        rep.empirical_c1 = std::max(rep.empirical_c1, sched.alpha(n));
        if (n > 0) rep.empirical_c0 = std::max(rep.empirical_c0, sn / prev);
        prev = sn;
    }
    rep.pass = rep.strictly_increasing && rep.ratio_ok && rep.alpha_bounded;
    return rep;
}

}  // namespace hsnewton
