#include "conformal_zeta/spectra.hpp"

#include <string>

#include "conformal_zeta/errors.hpp"

namespace cz {

std::string_view to_string(Space s) { return s == Space::sphere ? "sphere" : "projective"; }

Space parse_space(std::string_view s) {
  if (s == "sphere") return Space::sphere;
  if (s == "projective") return Space::projective;
  throw InvalidArgument("unknown space '" + std::string(s) + "' (expected sphere or projective)");
}

void validate(const SpectrumQuery& q) {
  if (q.n < 4 || q.n % 2 != 0) {
    throw InvalidArgument("spectrum query: n must be even and >= 4, got " + std::to_string(q.n));
  }
}

double sphere_eigenvalue(OperatorKind op, int n, int l) {
  if (op == OperatorKind::laplacian) return static_cast<double>(l) * (l + n - 1);
  double v = 1.0;
  for (int j = 1; j <= n - 2; ++j) v *= (l + j);
  return v;
}

std::uint64_t harmonic_multiplicity(int n, int l) {
  // (2l+n-1)/(n-1) * binom(l+n-2, n-2), accumulated exactly.
  unsigned __int128 binom = 1;
  for (int j = 1; j <= n - 2; ++j) binom = binom * static_cast<unsigned>(l + j) / static_cast<unsigned>(j);
  const unsigned __int128 m = binom * static_cast<unsigned>(2 * l + n - 1) / static_cast<unsigned>(n - 1);
  if (m > static_cast<unsigned __int128>(UINT64_MAX)) {
    throw InvalidArgument("harmonic_multiplicity overflows 64 bits");
  }
  return static_cast<std::uint64_t>(m);
}

SpectrumStream::SpectrumStream(SpectrumQuery q) : q_(q) { validate(q_); }

SpectrumTerm SpectrumStream::next() {
  SpectrumTerm t{l_, sphere_eigenvalue(q_.op, q_.n, l_), harmonic_multiplicity(q_.n, l_)};
  l_ += (q_.space == Space::projective) ? 2 : 1;
  return t;
}

std::vector<SpectrumTerm> SpectrumStream::take(std::size_t count) {
  std::vector<SpectrumTerm> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(next());
  return out;
}

SpectrumStream spectrum_stream(const SpectrumQuery& q) { return SpectrumStream(q); }

}  // namespace cz
