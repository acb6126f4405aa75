#include <doctest.h>

#include "fixtures.hpp"

using namespace hda;

TEST_CASE("integral and derivative are inverse on bounded fixtures") {
  for (const auto& f : fx::over_fixtures()) {
    INFO(f.name);
    auto r1 = check_integrate_differentiate(f.map);
    INFO(r1.to_json().dump());
    CHECK(r1.ok());
    auto r2 = check_differentiate_integrate(differentiate(f.map));
    INFO(r2.to_json().dump());
    CHECK(r2.ok());
    for (const auto& l : r2.laws) CHECK(l.checked > 0);
  }
}

TEST_CASE("derivative of the identity has one-point fibers acting by evaluation") {
  auto d = differentiate(identity_map(fx::EBool()));
  const auto& s = fx::slice_of(fx::EBool());
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    auto x = *s.sample(rng, {});
    Tuple args;
    for (const auto& c : x.in()) {
      auto f = d->carrier(c);
      REQUIRE(f.size() == 1);
      CHECK(f[0] == c.element().to_json());
      args.push_back(f[0]);
    }
    Tuple out = d->act(x, args);
    for (std::size_t j = 0; j < out.size(); ++j) CHECK(out[j] == x.out()[j].element().to_json());
  }
}

TEST_CASE("circ acts as vertical composition in the source") {
  auto f = fx::over_fixtures()[3].map;
  auto d = std::dynamic_pointer_cast<const DifferentiatedAlgebra>(differentiate(f));
  const auto& s = fx::slice_of(f.target);
  const Prop& Q = *f.source;
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    auto y = *Q.sample(rng, {});
    SampleSpec above;
    above.in = y.out();
    auto x = *Q.sample(rng, above);
    Element g = s.circ(f.apply(x), f.apply(y));
    CHECK(d->act(g, {x.to_json(), y.to_json()})[0] == Q.vcomp(x, y).to_json());
  }
}

TEST_CASE("integral of a two-point fiber algebra is a PROP over T") {
  auto in = integrate(fx::weighted_slice_algebra());
  LawOptions o;
  o.max_arity = 2;
  auto rep = check_prop_laws(*in.prop, o);
  INFO(rep.to_json().dump());
  CHECK(rep.ok());
  CHECK(check_prop_map(in.projection, o).ok());
}

TEST_CASE("slice algebra laws for the weighted fixture") {
  AlgebraCheckOptions o;
  o.samples = 60;
  auto rep = check_algebra(*fx::weighted_slice_algebra(), o);
  INFO(rep.to_json().dump());
  CHECK(rep.ok());
}
