#pragma once

#include <memory>

#include <fgdist/reconstruct.hpp>

namespace fixtures {

// A law at one level with its pairing algebra, splay and extracted table.
struct Extracted {
  Extracted(const fgdist::FormalGroupLaw& law, unsigned level)
      : dist(std::make_unique<fgdist::DistLevel>(law, level)),
        splay(fgdist::SplayDescription::from_law(law, level)),
        table(fgdist::extract_pi(*dist, splay)) {}

  std::unique_ptr<fgdist::DistLevel> dist;
  std::shared_ptr<const fgdist::SplayDescription> splay;
  fgdist::PoissonTable table;
};

inline fgdist::FormalGroupLaw t2(unsigned p, unsigned level) {
  const fgdist::Prime pr(p);
  return fgdist::builtin_t2(pr, fgdist::default_cap(pr, level, 2));
}

inline fgdist::FormalGroupLaw ga(unsigned p, unsigned level, std::size_t n = 1) {
  const fgdist::Prime pr(p);
  return fgdist::builtin_additive(pr, fgdist::default_cap(pr, level, n));
}

inline fgdist::FormalGroupLaw gm(unsigned p, unsigned level, std::size_t n = 1) {
  const fgdist::Prime pr(p);
  return fgdist::builtin_multiplicative(pr, fgdist::default_cap(pr, level, n));
}

inline fgdist::FormalGroupLaw ga_gm(unsigned p, unsigned level) {
  return fgdist::product_law({ga(p, level, 2), gm(p, level, 2)});
}

inline fgdist::Combination word_combination(const fgdist::LevelShape& sh, const fgdist::Word& w) {
  return fgdist::Combination::single(sh.from_word(w), 1);
}

}  // namespace fixtures
