#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace cz {

enum class Space { sphere, projective };
enum class OperatorKind { laplacian, subcritical_gjms };

std::string_view to_string(Space s);
Space parse_space(std::string_view s);

struct SpectrumQuery {
  Space space = Space::sphere;
  int n = 4;
  OperatorKind op = OperatorKind::subcritical_gjms;
};

struct SpectrumTerm {
  int l = 0;
  double eigenvalue = 0.0;
  std::uint64_t multiplicity = 0;
};

/// Eigenvalue of degree-l harmonics: l(l+n-1) for the Laplacian and
/// (l+1)(l+2)...(l+n-2) for the subcritical GJMS operator.
double sphere_eigenvalue(OperatorKind op, int n, int l);
/// Dimension of the degree-l spherical harmonics on S^n, (2l+n-1)(l+n-2)!/((n-1)! l!).
std::uint64_t harmonic_multiplicity(int n, int l);

/// Lazy stream of (degree, eigenvalue, multiplicity) in increasing degree. On RP^n only
/// even degrees occur.
class SpectrumStream {
 public:
  explicit SpectrumStream(SpectrumQuery q);

  SpectrumTerm next();
  std::vector<SpectrumTerm> take(std::size_t count);
  const SpectrumQuery& query() const { return q_; }

 private:
  SpectrumQuery q_;
  int l_ = 0;
};

SpectrumStream spectrum_stream(const SpectrumQuery& q);

void validate(const SpectrumQuery& q);

}  // namespace cz
