#pragma once

#include <Eigen/Core>
#include <cmath>
#include <utility>
#include <vector>

#include "cfscan/errors.hpp"

namespace cfscan {

enum class BasisKind { kBSpline, kFourier };

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
template <typename Scalar>
void gauss_legendre(int n, std::vector<Scalar>& nodes, std::vector<Scalar>& weights) {
  nodes.resize(n);
  weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Scalar x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    Scalar dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Scalar p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const Scalar dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < Scalar(1e-16)) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = Scalar(2) / ((1 - x * x) * dp * dp);
  }
}

}  // namespace detail

// Finite function basis on [0, T]. B-splines use a clamped uniform knot
// vector (endpoint multiplicity degree + 1) so the functions form a
// partition of unity; the Fourier variant is a constant plus sine/cosine
// pairs of increasing frequency.
template <typename Scalar>
class Basis {
public:
  using Vector = Eigen::VectorX<Scalar>;
  using Matrix = Eigen::MatrixX<Scalar>;

  static Basis bspline(int size, int degree, Scalar horizon) {
    if (!(horizon > Scalar(0))) throw InvalidBasisSpec("basis horizon must be positive");
    if (degree < 0) throw InvalidBasisSpec("bspline degree must be >= 0");
    if (size < degree + 1)
      throw InvalidBasisSpec("bspline needs size >= degree + 1");
    Basis b;
    b.kind_ = BasisKind::kBSpline;
    b.size_ = size;
    b.degree_ = degree;
    b.horizon_ = horizon;
    const int interior = size - degree - 1;
    b.knots_.reserve(static_cast<std::size_t>(size + degree + 1));
    for (int i = 0; i <= degree; ++i) b.knots_.push_back(Scalar(0));
    for (int i = 1; i <= interior; ++i)
      b.knots_.push_back(horizon * Scalar(i) / Scalar(interior + 1));
    for (int i = 0; i <= degree; ++i) b.knots_.push_back(horizon);
    b.init_quadrature(std::max(5, degree + 1));
    return b;
  }

  static Basis fourier(int size, Scalar horizon) {
    if (!(horizon > Scalar(0))) throw InvalidBasisSpec("basis horizon must be positive");
    if (size < 1) throw InvalidBasisSpec("fourier needs size >= 1");
    Basis b;
    b.kind_ = BasisKind::kFourier;
    b.size_ = size;
    b.degree_ = 0;
    b.horizon_ = horizon;
    b.init_quadrature(16);
    return b;
  }

  BasisKind kind() const { return kind_; }
  int size() const { return size_; }
  int degree() const { return degree_; }
  Scalar horizon() const { return horizon_; }
  const std::vector<Scalar>& knots() const { return knots_; }

  int local_width() const { return kind_ == BasisKind::kBSpline ? degree_ + 1 : size_; }

  // Values of the local_width() consecutive functions that can be nonzero at
  // t, starting at index `first`. For Fourier every function is live.
  void eval_local(Scalar t, int& first, Scalar* values) const {
    if (t < Scalar(0) || t > horizon_) throw TimeOutOfDomain("basis evaluated outside [0, T]");
    if (kind_ == BasisKind::kFourier) {
      first = 0;
      fourier_values(t, values);
      return;
    }
    const int span = find_span(t);
    first = span - degree_;
    // Cox-de Boor triangle over the active span.
    values[0] = Scalar(1);
    std::vector<Scalar> left(degree_ + 1), right(degree_ + 1);
    for (int d = 1; d <= degree_; ++d) {
      left[d] = t - knots_[span + 1 - d];
      right[d] = knots_[span + d] - t;
      Scalar saved = 0;
      for (int r = 0; r < d; ++r) {
        const Scalar tmp = values[r] / (right[r + 1] + left[d - r]);
        values[r] = saved + right[r + 1] * tmp;
        saved = left[d - r] * tmp;
      }
      values[d] = saved;
    }
  }

  Vector eval(Scalar t) const {
    Vector out = Vector::Zero(size_);
    std::vector<Scalar> buf(static_cast<std::size_t>(local_width()));
    int first = 0;
    eval_local(t, first, buf.data());
    for (int r = 0; r < local_width(); ++r) out[first + r] = buf[static_cast<std::size_t>(r)];
    return out;
  }

  // Adds int_a^b phi dt into s and int_a^b phi phi^T dt into Q. The interval
  // is split at knots (and, for Fourier, into sub-period chunks) so the
  // quadrature is exact to rounding for splines and far below 1e-12 for the
  // trigonometric case.
  void accumulate_integrals(Scalar a, Scalar b, Eigen::Ref<Vector> s, Eigen::Ref<Matrix> Q) const {
    if (a < Scalar(0) || b > horizon_ || a > b)
      throw TimeOutOfDomain("integration bounds outside [0, T]");
    if (s.size() != size_ || Q.rows() != size_ || Q.cols() != size_)
      throw DimensionMismatch("integral accumulators have wrong size");
    if (a == b) return;
    const int w = local_width();
    std::vector<Scalar> buf(static_cast<std::size_t>(w));
    auto piece = [&](Scalar lo, Scalar hi) {
      const Scalar half = (hi - lo) / Scalar(2);
      const Scalar mid = (hi + lo) / Scalar(2);
      for (std::size_t g = 0; g < quad_nodes_.size(); ++g) {
        const Scalar t = mid + half * quad_nodes_[g];
        const Scalar wt = half * quad_weights_[g];
        int first = 0;
        eval_local(t, first, buf.data());
        for (int r = 0; r < w; ++r) {
          const Scalar vr = wt * buf[static_cast<std::size_t>(r)];
          s[first + r] += vr;
          for (int c = 0; c < w; ++c) Q(first + r, first + c) += vr * buf[static_cast<std::size_t>(c)];
        }
      }
    };
    for_each_piece(a, b, piece);
  }

  std::pair<Vector, Matrix> integrate_on_interval(Scalar a, Scalar b) const {
    Vector s = Vector::Zero(size_);
    Matrix Q = Matrix::Zero(size_, size_);
    accumulate_integrals(a, b, s, Q);
    return {std::move(s), std::move(Q)};
  }

private:
  Basis() = default;

  void init_quadrature(int order) {
    detail::gauss_legendre<Scalar>(order, quad_nodes_, quad_weights_);
  }

  int find_span(Scalar t) const {
    // Largest span index with knots_[span] <= t, clamped so t = T lands in
    // the final nonempty span.
    const int lo = degree_;
    const int hi = size_ - 1;
    int span = hi;
    if (t < horizon_) {
      auto it = std::upper_bound(knots_.begin() + lo, knots_.begin() + hi + 1, t);
      span = static_cast<int>(it - knots_.begin()) - 1;
    }
    return std::clamp(span, lo, hi);
  }

  void fourier_values(Scalar t, Scalar* values) const {
    values[0] = Scalar(1);
    const Scalar base = Scalar(2) * Scalar(M_PI) * t / horizon_;
    for (int idx = 1, k = 1; idx < size_; ++k) {
      values[idx++] = std::sin(Scalar(k) * base);
      if (idx < size_) values[idx++] = std::cos(Scalar(k) * base);
    }
  }

  template <typename Fn>
  void for_each_piece(Scalar a, Scalar b, Fn&& piece) const {
    if (kind_ == BasisKind::kBSpline) {
      Scalar lo = a;
      for (std::size_t i = 0; i < knots_.size(); ++i) {
        const Scalar k = knots_[i];
        if (k <= lo) continue;
        if (k >= b) break;
        piece(lo, k);
        lo = k;
      }
      if (lo < b) piece(lo, b);
    } else {
      const int kmax = std::max(1, size_ / 2);
      const Scalar target = horizon_ / (Scalar(4) * Scalar(kmax));
      const int pieces = std::max<int>(1, static_cast<int>(std::ceil((b - a) / target)));
      for (int i = 0; i < pieces; ++i) {
        const Scalar lo = a + (b - a) * Scalar(i) / Scalar(pieces);
        const Scalar hi = a + (b - a) * Scalar(i + 1) / Scalar(pieces);
        piece(lo, hi);
      }
    }
  }

  BasisKind kind_ = BasisKind::kBSpline;
  int size_ = 0;
  int degree_ = 0;
  Scalar horizon_ = 0;
  std::vector<Scalar> knots_;
  std::vector<Scalar> quad_nodes_;
  std::vector<Scalar> quad_weights_;
};

template <typename Scalar>
Basis<Scalar> make_basis(BasisKind kind, int size, int degree, Scalar horizon) {
  return kind == BasisKind::kBSpline ? Basis<Scalar>::bspline(size, degree, horizon)
                                     : Basis<Scalar>::fourier(size, horizon);
}

using Basisd = Basis<double>;

}  // namespace cfscan
