#include "chainweight/homology.hpp"

#include <algorithm>
#include <vector>

#include "chainweight/errors.hpp"

namespace chainweight {

ModulePresentation HomologyProfile::at(int deg) const {
  auto it = groups.find(deg);
  return it == groups.end() ? ModulePresentation{} : it->second;
}

HomologyProfile HomologyProfile::shifted(int k) const {
  HomologyProfile out{ring, {}};
  for (const auto& [deg, g] : groups) out.groups.emplace(deg + k, g);
  return out;
}

std::string HomologyProfile::to_string(int lo, int hi) const {
  std::string out;
  for (int i = lo; i <= hi; ++i) {
    if (!out.empty()) out += "; ";
    out += "H_" + std::to_string(i) + ": " + at(i).to_string(ring);
  }
  return out.empty() ? "acyclic" : out;
}

std::string HomologyProfile::to_string() const {
  if (is_acyclic()) return "acyclic";
  return to_string(lowest(), highest());
}

HomologyProfile direct_sum(const HomologyProfile& a, const HomologyProfile& b) {
  require_same_ring(a.ring, b.ring, "homology direct sum");
  HomologyProfile out = a;
  for (const auto& [deg, g] : b.groups) {
    auto& slot = out.groups[deg];
    slot.free_rank += g.free_rank;
    slot.torsion.insert(slot.torsion.end(), g.torsion.begin(), g.torsion.end());
    // Invariant factors of a sum: re-derive the divisibility chain.
    if (!slot.torsion.empty()) {
      std::size_t n = slot.torsion.size();
      Matrix diag(a.ring, n, n);
      for (std::size_t k = 0; k < n; ++k) diag.set(k, k, slot.torsion[k]);
      slot.torsion.clear();
      for (auto& d : elementary_divisors(diag))
        if (d != 1) slot.torsion.push_back(d);
    }
  }
  return out;
}

namespace {

struct DegreeData {
  std::size_t rank = 0;
  std::vector<mpz_class> divisors;
};

}  // namespace

HomologyProfile homology(const ChainComplex& x) {
  HomologyProfile out{x.ring(), {}};
  int lo = x.min_degree(), hi = x.max_degree();
  if (lo > hi) return out;
  // divisors of d_i for i in [lo, hi+1]
  std::vector<DegreeData> ds;
  for (int i = lo; i <= hi + 1; ++i) {
    auto divs = elementary_divisors(x.d(i));
    ds.push_back({divs.size(), std::move(divs)});
  }
  for (int i = lo; i <= hi; ++i) {
    const auto& here = ds[static_cast<std::size_t>(i - lo)];
    const auto& above = ds[static_cast<std::size_t>(i - lo + 1)];
    ModulePresentation g;
    g.free_rank = x.rank(i) - here.rank - above.rank;
    if (!x.ring().is_field())
      for (const auto& d : above.divisors)
        if (d != 1) g.torsion.push_back(d);
    if (!g.is_zero()) out.groups.emplace(i, std::move(g));
  }
  return out;
}

ModulePresentation homology_at(const ChainComplex& x, int deg) {
  if (!x.in_range(deg)) return {};
  auto here = elementary_divisors(x.d(deg));
  auto above = elementary_divisors(x.d(deg + 1));
  ModulePresentation g;
  g.free_rank = x.rank(deg) - here.size() - above.size();
  if (!x.ring().is_field())
    for (const auto& d : above)
      if (d != 1) g.torsion.push_back(d);
  return g;
}

bool is_acyclic(const ChainComplex& x) { return homology(x).is_acyclic(); }

}  // namespace chainweight
