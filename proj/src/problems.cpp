#include "hsnewton/problems.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace hsnewton {

namespace {

Vector default_truth(int K, const Vector& given) {
    if (given.size() == 0) return Vector::Zero(K);
    if (given.size() != K)
        throw std::invalid_argument("problem: x_truth dimension mismatch");
    return given;
}

class DiagonalLinearProblem final : public ForwardProblem {
  public:
    DiagonalLinearProblem(int K, double a, Vector x_truth, double rho) {
        if (K < 1) throw std::invalid_argument("diagonal-linear: K must be >= 1");
        if (a < 0.0) throw std::invalid_argument("diagonal-linear: a must be >= 0");
        if (!(rho > 0.0)) throw std::invalid_argument("diagonal-linear: rho must be > 0");
        scale_ = make_scale_linear(K);
        a_ = a;
        b_ = a;
        beta_ = 1.0;
        k0_ = 0.0;
        m_ = 1.0;
        big_m_ = 1.0;
        rho_ = rho;
        sigma_ = Vector(K);
        for (int k = 0; k < K; ++k)
            sigma_[k] = std::pow(scale_.eigenvalues[k], -a);
        x_truth_ = default_truth(K, x_truth);
        y_exact_ = sigma_.cwiseProduct(x_truth_);
    }

    Vector eval(const Vector& x) const override { return sigma_.cwiseProduct(x); }
    Vector deriv_apply(const Vector&, const Vector& h) const override {
        return sigma_.cwiseProduct(h);
    }
    Vector adjoint_apply(const Vector&, const Vector& w) const override {
        return sigma_.cwiseProduct(w);
    }
    bool constant_derivative() const override { return true; }
    std::string name() const override { return "diagonal-linear"; }

  private:
    Vector sigma_;  // singular values l_k^{-a}
};

class QuadraticRankOneProblem final : public ForwardProblem {
  public:
    QuadraticRankOneProblem(int K, double a, double gamma, Vector v, Vector x_truth,
                            double rho) {
        if (K < 1) throw std::invalid_argument("quadratic-rank1: K must be >= 1");
        if (a < 0.0) throw std::invalid_argument("quadratic-rank1: a must be >= 0");
        if (!(gamma > 0.0)) throw std::invalid_argument("quadratic-rank1: gamma must be > 0");
        if (!(rho > 0.0)) throw std::invalid_argument("quadratic-rank1: rho must be > 0");
        scale_ = make_scale_linear(K);
        const double spread = gamma * std::pow(scale_.theta, a) * rho;
        if (!(spread < 1.0))
            throw std::invalid_argument(
                "quadratic-rank1: gamma * theta^a * rho must stay below 1 "
                "(frame property on the ball)");
        a_ = a;
        b_ = a;
        beta_ = 1.0;
        k0_ = gamma * std::pow(scale_.theta, a);
        m_ = 1.0 - spread;
        big_m_ = 1.0 + spread;
        rho_ = rho;
        gamma_ = gamma;
        sigma_ = Vector(K);
        for (int k = 0; k < K; ++k)
            sigma_[k] = std::pow(scale_.eigenvalues[k], -a);
        if (v.size() == 0) {
            v_ = Vector::Constant(K, 1.0 / std::sqrt(static_cast<double>(K)));
        } else {
            if (v.size() != K)
                throw std::invalid_argument("quadratic-rank1: v dimension mismatch");
            const double n = v.norm();
            if (n == 0.0) throw std::invalid_argument("quadratic-rank1: v must be nonzero");
            v_ = v / n;
        }
        x_truth_ = default_truth(K, x_truth);
        c_truth_ = sigma_.cwiseProduct(x_truth_).dot(v_);
        y_exact_ = eval(x_truth_);
    }

    // F(x) = T x + (gamma/2)(<Tx,v> - c)^2 v
    Vector eval(const Vector& x) const override {
        const Vector tx = sigma_.cwiseProduct(x);
        const double c = tx.dot(v_) - c_truth_;
        return tx + 0.5 * gamma_ * c * c * v_;
    }
    // F'(x) = (I + gamma (<Tx,v> - c) v v^T) T
    Vector deriv_apply(const Vector& x, const Vector& h) const override {
        const double c = sigma_.cwiseProduct(x).dot(v_) - c_truth_;
        const Vector th = sigma_.cwiseProduct(h);
        return th + gamma_ * c * th.dot(v_) * v_;
    }
    Vector adjoint_apply(const Vector& x, const Vector& w) const override {
        const double c = sigma_.cwiseProduct(x).dot(v_) - c_truth_;
        return sigma_.cwiseProduct(w + gamma_ * c * w.dot(v_) * v_);
    }
    std::string name() const override { return "quadratic-rank1"; }

  private:
    Vector sigma_;
    Vector v_;
    double gamma_ = 0.0;
    double c_truth_ = 0.0;
};

// Multiplies F (and y) by a constant; frame and Hoelder constants scale with it.
class ScaledProblem final : public ForwardProblem {
  public:
    ScaledProblem(ProblemPtr inner, double factor) : inner_(std::move(inner)), c_(factor) {
        if (!(factor > 0.0)) throw std::invalid_argument("ScaledProblem: factor must be > 0");
        scale_ = inner_->scale();
        a_ = inner_->a();
        b_ = inner_->b();
        beta_ = inner_->beta();
        k0_ = c_ * inner_->holder_k0();
        m_ = c_ * inner_->frame_lower();
        big_m_ = c_ * inner_->frame_upper();
        rho_ = inner_->ball_radius();
        x_truth_ = inner_->x_truth();
        y_exact_ = c_ * inner_->y_exact();
    }

    Vector eval(const Vector& x) const override { return c_ * inner_->eval(x); }
    Vector deriv_apply(const Vector& x, const Vector& h) const override {
        return c_ * inner_->deriv_apply(x, h);
    }
    Vector adjoint_apply(const Vector& x, const Vector& w) const override {
        return c_ * inner_->adjoint_apply(x, w);
    }
    bool constant_derivative() const override { return inner_->constant_derivative(); }
    std::string name() const override { return inner_->name(); }

  private:
    ProblemPtr inner_;
    double c_;
};

}  // namespace

ProblemPtr make_diagonal_linear(int K, double a, Vector x_truth, double rho) {
    return std::make_shared<DiagonalLinearProblem>(K, a, std::move(x_truth), rho);
}

ProblemPtr make_quadratic_perturbed(int K, double a, double gamma, Vector v,
                                    Vector x_truth, double rho) {
    return std::make_shared<QuadraticRankOneProblem>(K, a, gamma, std::move(v),
                                                     std::move(x_truth), rho);
}

RescaleResult normalize_problem_scale(ProblemPtr problem, double s, double alpha0) {
    if (!problem) throw std::invalid_argument("rescale: null problem");
    if (!(alpha0 > 0.0)) throw std::invalid_argument("rescale: alpha0 must be > 0");
    if (s < -problem->a()) throw std::invalid_argument("rescale: s must be >= -a");

    const ScaleOperator& scale = problem->scale();
    const Vector& xt = problem->x_truth();
    const ApplyFn fwd = [&](const Vector& v) {
        return problem->deriv_apply(xt, apply_power(scale, -s, v));
    };
    const ApplyFn adj = [&](const Vector& w) {
        return apply_power(scale, -s, problem->adjoint_apply(xt, w));
    };
    const double base = operator_norm_power(fwd, adj, problem->dim(), 200, 1e-10);
    if (!(base > 0.0))
        throw std::runtime_error("rescale: power iteration found a zero derivative");

    // Ball-uniform norm bound: both pieces majorize sup_{B_rho} ||F'(x)L^{-s}||.
    const double embed = problem->frame_upper() *
                         std::pow(scale.theta, problem->a() + s);
    const double relative = problem->frame_upper() / problem->frame_lower() * base;
    const double bound = std::min(embed, relative);
    const double target = std::min(1.0, std::sqrt(alpha0));
    const double factor = target / bound;
    return {std::make_shared<ScaledProblem>(std::move(problem), factor), factor};
}

NoisyData make_noisy(const ForwardProblem& problem, double delta, std::uint64_t seed) {
    if (delta < 0.0) throw std::invalid_argument("make_noisy: delta must be >= 0");
    NoisyData data;
    data.delta = delta;
    data.seed = seed;
    if (delta == 0.0) {
        data.y_delta = problem.y_exact();
        return data;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector xi(problem.dim());
    for (int i = 0; i < problem.dim(); ++i) xi[i] = gauss(rng);
    const double n = xi.norm();
    if (n == 0.0) throw std::runtime_error("make_noisy: degenerate noise draw");
    data.y_delta = problem.y_exact() + (delta / n) * xi;
    return data;
}

namespace {

Matrix assemble_scaled_derivative(const ForwardProblem& problem, const Vector& x,
                                  double s) {
    const int K = problem.dim();
    Matrix a(K, K);
    Vector unit = Vector::Zero(K);
    for (int j = 0; j < K; ++j) {
        unit[j] = std::pow(problem.scale().eigenvalues[j], -s);
        a.col(j) = problem.deriv_apply(x, unit);
        unit[j] = 0.0;
    }
    return a;
}

}  // namespace

SourceConstruction construct_source(const ForwardProblem& problem, double s, double mu,
                                    const Vector& omega) {
    const double a = problem.a(), b = problem.b(), beta = problem.beta();
    if (!(a + s > 0.0))
        throw std::invalid_argument("construct_source: a + s must be positive");
    const double lo = (a - b) / beta;
    if (!(mu > lo && mu <= b + 2.0 * s + 1e-12))
        throw std::invalid_argument(
            "construct_source: mu must lie in ((a-b)/beta, b+2s] (smoothness window)");
    if (omega.size() != problem.dim())
        throw std::invalid_argument("construct_source: omega dimension mismatch");

    const Matrix a_mat = assemble_scaled_derivative(problem, problem.x_truth(), s);
    Matrix normal = a_mat.transpose() * a_mat;
    normal = 0.5 * (normal + normal.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(normal);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("construct_source: eigendecomposition failed");

    const double power = (mu - s) / (2.0 * (a + s));
    Vector evals = es.eigenvalues().cwiseMax(0.0);
    Vector weights(evals.size());
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        if (evals[i] <= 0.0 && power < 0.0)
            throw std::runtime_error("construct_source: singular normal operator");
        weights[i] = evals[i] > 0.0 ? std::pow(evals[i], power) : 0.0;
    }
    const Vector transformed =
        es.eigenvectors() * weights.cwiseProduct(es.eigenvectors().transpose() * omega);

    SourceConstruction out;
    out.source.mu = mu;
    out.source.omega = omega;
    out.source.omega_norm = omega.norm();
    out.source.e0 = apply_power(problem.scale(), -s, transformed);
    out.x0 = problem.x_truth() + out.source.e0;
    return out;
}

Vector spread_omega(int K, double norm) {
    if (K < 1) throw std::invalid_argument("spread_omega: K must be >= 1");
    Vector w(K);
    for (int k = 0; k < K; ++k) w[k] = std::pow(k + 1.0, -0.5);
    return (norm / w.norm()) * w;
}

double holder_probe(const ForwardProblem& problem, int sample_count,
                    std::uint64_t seed) {
    if (sample_count < 1) throw std::invalid_argument("holder_probe: need >= 1 sample");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int K = problem.dim();
    const Vector& xt = problem.x_truth();
    double worst = 0.0;
    for (int i = 0; i < sample_count; ++i) {
        Vector dir(K);
        for (int j = 0; j < K; ++j) dir[j] = gauss(rng);
        const double n = dir.norm();
        const double radius = problem.ball_radius() * (1.0 - unit(rng));  // (0, rho]
        if (n == 0.0 || radius == 0.0) continue;  // x = x_truth excluded
        const Vector x = xt + (radius / n) * dir;

        const ApplyFn diff = [&](const Vector& h) -> Vector {
            const Vector lbh = apply_power(problem.scale(), problem.b(), h);
            return problem.deriv_apply(x, lbh) - problem.deriv_apply(xt, lbh);
        };
        const ApplyFn diff_adj = [&](const Vector& w) {
            return apply_power(problem.scale(), problem.b(),
                               problem.adjoint_apply(x, w) - problem.adjoint_apply(xt, w));
        };
        const double op_norm = operator_norm_power(diff, diff_adj, K, 200, 1e-10);
        worst = std::max(worst, op_norm / std::pow((x - xt).norm(), problem.beta()));
    }
    return worst;
}

}  // namespace hsnewton
