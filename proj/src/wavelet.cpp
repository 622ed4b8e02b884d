#include "sobolev/wavelet.hpp"

#include <cmath>

namespace sobolev {

namespace {

RVector high_from_low(const RVector& h) {
  const Eigen::Index n = h.size();
  RVector g(n);
  for (Eigen::Index k = 0; k < n; ++k) g[k] = (k % 2 == 0 ? 1.0 : -1.0) * h[n - 1 - k];
  return g;
}

void check_layout(const Domain& d, int levels) {
  if (d.kind() != DomainKind::Torus || d.dims() != 1)
    throw DomainMismatch("wavelet transform needs a 1D torus, got " + d.describe());
  if (levels < 1) throw InvalidArgument("wavelet levels must be >= 1");
  if (levels > 30 || d.size() % (Eigen::Index{1} << levels) != 0)
    throw InvalidArgument("grid length " + std::to_string(d.size()) + " not divisible by 2^" + std::to_string(levels));
}

void analysis_step(const CVector& c, const WaveletBasis& b, CVector& approx, CVector& detail) {
  const Eigen::Index n = c.size(), half = n / 2, taps = b.low_pass.size();
  approx = CVector::Zero(half);
  detail = CVector::Zero(half);
  for (Eigen::Index k = 0; k < half; ++k)
    for (Eigen::Index i = 0; i < taps; ++i) {
      const Complex v = c[(2 * k + i) % n];
      approx[k] += b.low_pass[i] * v;
      detail[k] += b.high_pass[i] * v;
    }
}

CVector synthesis_step(const CVector& approx, const CVector& detail, const WaveletBasis& b) {
  const Eigen::Index half = approx.size(), n = 2 * half, taps = b.low_pass.size();
  CVector c = CVector::Zero(n);
  for (Eigen::Index k = 0; k < half; ++k)
    for (Eigen::Index i = 0; i < taps; ++i)
      c[(2 * k + i) % n] += b.low_pass[i] * approx[k] + b.high_pass[i] * detail[k];
  return c;
}

}  // namespace

WaveletBasis WaveletBasis::haar() {
  WaveletBasis b;
  b.family = WaveletFamily::Haar;
  b.low_pass = RVector::Constant(2, 1.0 / std::sqrt(2.0));
  b.high_pass = high_from_low(b.low_pass);
  b.regularity = 0.0;
  return b;
}

WaveletBasis WaveletBasis::daubechies4() {
  const double r3 = std::sqrt(3.0), den = 4.0 * std::sqrt(2.0);
  WaveletBasis b;
  b.family = WaveletFamily::Daubechies4;
  b.low_pass.resize(4);
  b.low_pass << (1 + r3) / den, (3 + r3) / den, (3 - r3) / den, (1 - r3) / den;
  b.high_pass = high_from_low(b.low_pass);
  b.regularity = 1.0;
  return b;
}

WaveletDecomposition fwt(const GridFn& u, const WaveletBasis& basis, int levels) {
  const Domain& d = u.domain();
  check_layout(d, levels);
  WaveletDecomposition out{d, {}, std::vector<CVector>(static_cast<std::size_t>(levels))};
  CVector c = u.values() * std::sqrt(d.spacing(0));
  for (int j = levels - 1; j >= 0; --j) {
    CVector a;
    analysis_step(c, basis, a, out.details[static_cast<std::size_t>(j)]);
    c = std::move(a);
  }
  out.approx = std::move(c);
  return out;
}

GridFn ifwt(const WaveletDecomposition& dec, const WaveletBasis& basis) {
  check_layout(dec.domain, dec.levels());
  CVector c = dec.approx;
  for (int j = 0; j < dec.levels(); ++j) {
    const CVector& det = dec.details[static_cast<std::size_t>(j)];
    if (det.size() != c.size()) throw InvalidArgument("ifwt: inconsistent level sizes");
    c = synthesis_step(c, det, basis);
  }
  if (c.size() != dec.domain.size()) throw InvalidArgument("ifwt: decomposition does not match its domain");
  return GridFn(dec.domain, c / std::sqrt(dec.domain.spacing(0)));
}

WaveletDecomposition empty_decomposition(const Domain& d, int levels) {
  check_layout(d, levels);
  WaveletDecomposition out{d, CVector::Zero(d.size() >> levels), {}};
  for (int j = 0; j < levels; ++j) out.details.push_back(CVector::Zero(d.size() >> (levels - j)));
  return out;
}

GridFn adjoint_embedding_wavelet(const GridFn& u, double s, const WaveletBasis& basis, int levels) {
  if (s < 0.0) throw InvalidArgument("wavelet adjoint embedding needs s >= 0");
  WaveletDecomposition dec = fwt(u, basis, levels);
  for (int j = 0; j < levels; ++j) dec.details[static_cast<std::size_t>(j)] *= std::pow(2.0, -2.0 * j * s);
  GridFn out = ifwt(dec, basis);
  if (u.is_real()) return GridFn::from_real(out.domain(), out.real());
  return out;
}

Complex wavelet_sobolev_inner(const GridFn& u, const GridFn& v, double s, const WaveletBasis& basis, int levels) {
  const WaveletDecomposition a = fwt(u, basis, levels), b = fwt(v, basis, levels);
  Complex sum = a.approx.dot(b.approx);  // dot conjugates the left operand
  sum = std::conj(sum);
  for (int j = 0; j < levels; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    sum += std::pow(2.0, 2.0 * j * s) * std::conj(a.details[jj].dot(b.details[jj]));
  }
  return sum;
}

double wavelet_sobolev_norm(const GridFn& u, double s, const WaveletBasis& basis, int levels) {
  return std::sqrt(std::max(0.0, wavelet_sobolev_inner(u, u, s, basis, levels).real()));
}

LinOp adjoint_embedding_wavelet_op(const Domain& d, double s, const WaveletBasis& basis, int levels) {
  check_layout(d, levels);
  return {"E_s* (wavelet)",
          d,
          d,
          [=](const GridFn& u) { return adjoint_embedding_wavelet(u, s, basis, levels); },
          [](const GridFn& v) { return v; },
          InnerProductSpec::l2(),
          InnerProductSpec::custom_product("H^s[wavelet]", [=](const GridFn& a, const GridFn& b) {
            return wavelet_sobolev_inner(a, b, s, basis, levels);
          })};
}

}  // namespace sobolev
