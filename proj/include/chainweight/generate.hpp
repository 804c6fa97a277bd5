#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "chainweight/complex.hpp"
#include "chainweight/filtration.hpp"
#include "chainweight/homology.hpp"

namespace chainweight {

/// Seeded generator with portable integer sampling (the standard
/// distributions are not reproducible across library implementations).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [lo, hi].
  long uniform(long lo, long hi);
  bool coin() { return uniform(0, 1) == 1; }
  std::uint64_t next() { return engine_(); }

  /// Independent stream for trial `index` of a campaign seeded with `seed`.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

 private:
  std::mt19937_64 engine_;
};

struct BlockMix {
  unsigned free = 3;        // R in one degree
  unsigned elementary = 2;  // [R =u=> R], u a unit
  unsigned torsion = 2;     // [R --t--> R], 2 <= t <= max_entry
};

struct GenParams {
  std::uint64_t seed = 1;
  RingSpec ring;
  int min_degree = -4;
  int max_degree = 4;
  std::size_t max_rank = 6;
  long max_entry = 3;
  /// Upper bound on the number of building blocks; the actual count is drawn
  /// from [0, max_blocks].
  std::size_t max_blocks = 8;
  BlockMix mix;
  /// Number of elementary operations per degree in the change of basis.
  std::size_t conjugation_steps = 3;
};

enum class BlockKind { Free, Elementary, Torsion };

struct Block {
  BlockKind kind;
  int degree;     // Free: its degree; two-term blocks: the lower degree
  mpz_class coefficient;  // differential entry of two-term blocks
};

struct GeneratedComplex {
  ChainComplex complex;
  HomologyProfile expected;
  std::vector<Block> blocks;
};

/// Homology of a single building block, straight from its definition.
HomologyProfile block_homology(const Block& b, RingSpec ring);
/// Direct sum of the blocks, before any change of basis.
ChainComplex assemble_blocks(const std::vector<Block>& blocks, RingSpec ring);

/// Random unimodular matrix and its inverse: a product of elementary
/// row operations with multipliers in [-bound, bound] and unit scalings.
std::pair<Matrix, Matrix> random_automorphism(Rng& rng, RingSpec ring, std::size_t n, long bound, std::size_t steps);

/// Φ_{i-1} d_i Φ_i⁻¹ for random unimodular Φ; returns the conjugated complex
/// and the isomorphism X → conjugate.
std::pair<ChainComplex, ChainMap> conjugate(Rng& rng, const ChainComplex& x, long bound, std::size_t steps);

std::vector<Block> random_blocks(Rng& rng, const GenParams& p);
GeneratedComplex gen_complex(const GenParams& p);
GeneratedComplex gen_complex(Rng& rng, const GenParams& p);

/// A seeded element of the lattice of degree-0 cycles of Hom(X, Y).
ChainMap gen_chain_map(std::uint64_t seed, const ChainComplex& x, const ChainComplex& y, long bound = 3);
ChainMap gen_chain_map(Rng& rng, const ChainComplex& x, const ChainComplex& y, long bound = 3);

/// A cellular filtration built from building blocks, each cell assigned a
/// level: free cells and torsion pairs sit at their own degrees, elementary
/// pairs either share one random level or split like torsion pairs. Every
/// stage is then conjugated independently.
struct GeneratedFiltration {
  CellFiltration filtration;
  ChainComplex complex;  // cells sorted by level within each degree
  /// levels[deg - complex.min_degree()][cell]
  std::vector<std::vector<int>> levels;
  /// Isomorphism from the prefix subcomplex of level <= k onto stage k, for
  /// k = filtration.lo - 1 … filtration.hi.
  std::vector<ChainMap> stage_isos;
  HomologyProfile expected;

  int level_of(int deg, std::size_t cell) const;
};
GeneratedFiltration gen_filtration(Rng& rng, const GenParams& p);

/// A filtered chain map F : X → Y (F maps level <= k into level <= k), sampled
/// from the cycles of the filtered hom-complex and restricted to every stage.
FiltrationMap gen_filtration_map(Rng& rng, const GeneratedFiltration& a, const GeneratedFiltration& b, long bound = 3);

}  // namespace chainweight
