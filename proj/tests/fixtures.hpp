#pragma once

#include <hda/algebra.hpp>
#include <hda/builtin.hpp>
#include <hda/evaluate.hpp>
#include <hda/free_prop.hpp>
#include <hda/integral.hpp>
#include <hda/operad.hpp>
#include <hda/presheaf.hpp>
#include <hda/slice.hpp>

namespace fx {

using namespace hda;

PropPtr T();
PropPtr T2();  // two colors a, b
PropPtr I();
PropPtr EBool();
std::shared_ptr<const FreeProp> free3();
PropPtr oprop4();

// Free PROP on α₁..α₇ over colors c, d and the seven-vertex (5,3)-graph.
std::shared_ptr<const FreeProp> free7();
DecoratedGraph graph53();
// σ₁[(α₇⊗α₂⊗1_d)∘τ(α₄⊗α₅⊗α₁)∘(α₃⊗α₆)]σ₂ assembled by hand.
Element graph53_expected();

const SliceProp& slice_of(const PropPtr& p);

struct OverFixture {
  std::string name;
  PropMap map;
};

// Ten PROPs over a base, each with finite fibers on bounded components.
std::vector<OverFixture> over_fixtures();

// ∂(T × W₂ → T): Z/2 over every element of T, graphs add their weights.
AlgebraPtr weighted_slice_algebra();

// Standard face-closed universe of shapes over P up to max_dim.
std::vector<Propertope> universe(const PropPtr& p, int max_dim = 3);

// Random lawful table algebras over T covering arities ≤ 4.
std::shared_ptr<TableAlgebra> random_T_table(std::uint64_t seed);

// ∂(M≀Σ → I) with M the monoid of maps {0,1} → {0,1}: a slice(I)-algebra
// whose fiber over ι_n is Mⁿ × Σ_n.
AlgebraPtr tensor_algebra();

// (x₁⊗y₁)∘(x₂⊗y₂) = (x₁∘x₂)⊗(y₁∘y₂) over ι_m, ι_n with m, n ≥ 1 and
// m + n ≤ max_total, on every carrier entry.
LawReport check_interchange(const Algebra& a, int max_total = 3);

}  // namespace fx
