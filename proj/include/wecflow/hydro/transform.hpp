#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wecflow/core/special.hpp"
#include "wecflow/core/types.hpp"

namespace wecflow::hydro {

/// Truncation of the cylindrical-harmonic basis: progressive orders
/// n = -n_prog..n_prog, evanescent modes m = 0..n_evan (m = 0 is the
/// progressive mode). Basis index = m * (2 n_prog + 1) + (n + n_prog);
/// there is no cross-m coupling in the transforms.
struct BasisDims {
  int n_prog = 0;  // N_n
  int n_evan = 0;  // N_m

  Index block() const { return 2 * n_prog + 1; }
  Index size() const { return block() * (n_evan + 1); }
  Index at(int n, int m) const { return m * block() + (n + n_prog); }
};

/// Distance and heading of the pair (i, j): L = ||x_j - x_i||,
/// alpha = angle of x_j - x_i with the x axis.
struct PairGeometry {
  double length = 0.0;
  double alpha = 0.0;

  static PairGeometry of(const Vec2& xi, const Vec2& xj) {
    PairGeometry p;
    const Vec2 d = xj - xi;
    p.length = d.norm();
    if (p.length <= 0.0)
      throw std::invalid_argument("PairGeometry: coincident device centers");
    p.alpha = std::atan2(d.y(), d.x());
    return p;
  }
};

/// Derivatives of (L, alpha) with respect to the four pair coordinates,
/// obtained from the 2x2 system
///   [cos a, -L sin a; sin a, L cos a] [dL; dalpha] = rhs
/// with rhs (-1,0) for x_i, (0,-1) for y_i, and negated for x_j, y_j.
struct PairDerivatives {
  double dl_dxi = 0.0, dl_dyi = 0.0;
  double dalpha_dxi = 0.0, dalpha_dyi = 0.0;
  // x_j, y_j derivatives are the negatives (L and alpha depend on x_j - x_i)
  double dl_dxj() const { return -dl_dxi; }
  double dl_dyj() const { return -dl_dyi; }
  double dalpha_dxj() const { return -dalpha_dxi; }
  double dalpha_dyj() const { return -dalpha_dyi; }
};

inline PairDerivatives pair_derivatives(const PairGeometry& p) {
  if (!(p.length > 0.0))
    throw std::invalid_argument("pair_derivatives: zero pair distance");
  const double ca = std::cos(p.alpha), sa = std::sin(p.alpha);
  // inverse of [ca, -L sa; sa, L ca] is (1/L) [L ca, L sa; -sa, ca]
  PairDerivatives d;
  // rhs (-1, 0):
  d.dl_dxi = -ca;
  d.dalpha_dxi = sa / p.length;
  // rhs (0, -1):
  d.dl_dyi = -sa;
  d.dalpha_dyi = -ca / p.length;
  return d;
}

/// Radius-dependent factors of the basis transformation, shared by every
/// pair at one frequency: J_l(k r) / H_n(k r) for the progressive block and
/// I_l(k_m r) / K_n(k_m r) for the evanescent blocks.
struct TransformFactors {
  BasisDims dims;
  // col[l + n_prog] and inv_row[n + n_prog], per mode block
  std::vector<Vec> col_real;           // J_l(kr) (m=0), I_l(k_m r) (m>=1)
  std::vector<CVec> inv_row;           // 1/H_n(kr) (m=0), 1/K_n(k_m r) (m>=1)

  static TransformFactors build(const BasisDims& dims, double k,
                                const std::vector<double>& k_evan,
                                double radius) {
    if (static_cast<int>(k_evan.size()) < dims.n_evan)
      throw std::invalid_argument("TransformFactors: missing evanescent roots");
    TransformFactors f;
    f.dims = dims;
    const Index p = dims.block();
    f.col_real.resize(dims.n_evan + 1);
    f.inv_row.resize(dims.n_evan + 1);
    for (int m = 0; m <= dims.n_evan; ++m) {
      f.col_real[m].resize(p);
      f.inv_row[m].resize(p);
      const double arg = (m == 0) ? k * radius : k_evan[m - 1] * radius;
      for (int n = -dims.n_prog; n <= dims.n_prog; ++n) {
        const Index a = n + dims.n_prog;
        if (m == 0) {
          f.col_real[m][a] = bessel::J(n, arg);
          f.inv_row[m][a] = 1.0 / bessel::H1(n, arg);
        } else {
          f.col_real[m][a] = bessel::I(n, arg);
          f.inv_row[m][a] = 1.0 / Complex(bessel::K(n, arg), 0.0);
        }
      }
    }
    return f;
  }
};

/// Dense per-mode blocks of T_ij and of its derivatives with respect to the
/// coordinates of device j (derivatives with respect to device i are the
/// negatives). Entries follow
///   (T_ij)^{nl}_{mm} = J_l(kr)/H_n(kr) H_{n-l}(k L) e^{i alpha (n-l)}        m = 0
///   (T_ij)^{nl}_{mm} = I_l(k_m r)/K_n(k_m r) K_{n-l}(k_m L) e^{i alpha (n-l)} (-1)^l, m >= 1
/// with the radial derivative of H through (H_{p-1} - H_{p+1})/2 and of K
/// through -(K_{p-1} + K_{p+1})/2.
struct TransformBlocks {
  std::vector<CMat> t;       // per mode m
  std::vector<CMat> dt_dxj;  // d/dx_j
  std::vector<CMat> dt_dyj;  // d/dy_j

  Index n_modes() const { return static_cast<Index>(t.size()); }

  /// y = T v (block diagonal across modes)
  CVec apply(const CVec& v) const { return apply_impl(v, false); }
  /// y = T^T v (plain transpose, no conjugation)
  CVec apply_transpose(const CVec& v) const { return apply_impl(v, true); }

 private:
  CVec apply_impl(const CVec& v, bool transpose) const {
    const Index p = t.empty() ? 0 : t[0].rows();
    CVec out(p * n_modes());
    for (Index m = 0; m < n_modes(); ++m) {
      auto seg = v.segment(m * p, p);
      out.segment(m * p, p) =
          transpose ? (t[m].transpose() * seg).eval() : (t[m] * seg).eval();
    }
    return out;
  }
};

inline TransformBlocks build_transform_blocks(
    const TransformFactors& f, const PairGeometry& geom,
    const PairDerivatives& deriv_j, double k,
    const std::vector<double>& k_evan, bool with_derivatives = true) {
  const BasisDims& dims = f.dims;
  const Index p = dims.block();
  const int span = 2 * dims.n_prog;  // |n - l| <= span
  TransformBlocks out;
  out.t.resize(dims.n_evan + 1);
  if (with_derivatives) {
    out.dt_dxj.resize(dims.n_evan + 1);
    out.dt_dyj.resize(dims.n_evan + 1);
  }

  // phase factors e^{i alpha d} and radial values for d = -span..span
  std::vector<Complex> phase(2 * span + 1);
  for (int d = -span; d <= span; ++d)
    phase[d + span] = std::exp(Complex(0.0, geom.alpha * d));

  const double dl_dxj = deriv_j.dl_dxj(), dl_dyj = deriv_j.dl_dyj();
  const double da_dxj = deriv_j.dalpha_dxj(), da_dyj = deriv_j.dalpha_dyj();

  for (int m = 0; m <= dims.n_evan; ++m) {
    const double wav = (m == 0) ? k : k_evan[m - 1];
    const double arg = wav * geom.length;

    // radial function and its z-derivative on the needed order range
    std::vector<Complex> rad(2 * span + 1), drad(2 * span + 1);
    for (int d = -span; d <= span; ++d) {
      if (m == 0) {
        rad[d + span] = bessel::H1(d, arg);
        drad[d + span] = bessel::dH1(d, arg);
      } else {
        rad[d + span] = Complex(bessel::K(d, arg), 0.0);
        drad[d + span] = Complex(bessel::dK(d, arg), 0.0);
      }
    }

    CMat tm(p, p), dxm(p, p), dym(p, p);
    for (int n = -dims.n_prog; n <= dims.n_prog; ++n) {
      for (int l = -dims.n_prog; l <= dims.n_prog; ++l) {
        const int d = n - l;
        const Index rn = n + dims.n_prog, cl = l + dims.n_prog;
        Complex factor = f.col_real[m][cl] * f.inv_row[m][rn];
        if (m >= 1 && (l & 1)) factor = -factor;  // (-1)^l
        const Complex ph = phase[d + span];
        tm(rn, cl) = factor * rad[d + span] * ph;
        if (with_derivatives) {
          const Complex common = factor * ph;
          const Complex dphase = Complex(0.0, 1.0) * static_cast<double>(d) *
                                 rad[d + span];
          dxm(rn, cl) =
              common * (wav * dl_dxj * drad[d + span] + da_dxj * dphase);
          dym(rn, cl) =
              common * (wav * dl_dyj * drad[d + span] + da_dyj * dphase);
        }
      }
    }
    out.t[m] = std::move(tm);
    if (with_derivatives) {
      out.dt_dxj[m] = std::move(dxm);
      out.dt_dyj[m] = std::move(dym);
    }
  }
  return out;
}

/// Ambient wave coefficients of a device centered at x: progressive entries
/// J_n(k r) e^{i n (pi/2 - beta)} Theta with Theta = e^{i k (x cos b + y sin b)},
/// evanescent entries zero.
inline CVec ambient_coeffs(const Vec2& x, double beta, double k,
                           const BasisDims& dims, double radius) {
  if (!(k > 0.0)) throw std::domain_error("ambient_coeffs: k must be > 0");
  CVec a = CVec::Zero(dims.size());
  const Complex theta = std::exp(
      Complex(0.0, k * (x.x() * std::cos(beta) + x.y() * std::sin(beta))));
  const double half_pi = std::acos(-1.0) / 2.0;
  for (int n = -dims.n_prog; n <= dims.n_prog; ++n) {
    a[dims.at(n, 0)] = bessel::J(n, k * radius) *
                       std::exp(Complex(0.0, n * (half_pi - beta))) * theta;
  }
  return a;
}

}  // namespace wecflow::hydro
