#include "fixtures.hpp"
#include <hda/metagraph.hpp>
#include <fstream>
using namespace hda;
void put(const std::string& n, const json& j){ std::ofstream(std::string(HDA_FIXTURE_DIR)+"/"+n) << j.dump(2) << "\n"; }
int main(){
  auto P = fx::free7();
  put("free7.prop.json", P->spec_json());
  auto dg = fx::graph53();
  for (int k = 0; k < 7; ++k) dg.deco[k] = P->generator("a" + std::to_string(k + 1));
  put("graph53.json", decorated_json(dg));
  put("graph53_expected.json", fx::graph53_expected().to_json());
  put("bool_or.algebra.json", {{"kind","bool-or"},{"prop","T"}});
  put("weighted.algebra.json", {{"kind","derivative"},{"map",{{"kind","projection"},{"factor",0},{"product",{{"kind","product"},{"factors",{ {{"kind","terminal"},{"colors",{"c"}}}, {{"kind","weighted"},{"colors",{"c"}},{"k",2}} }}}}}}}});
  put("iota.map.json", {{"kind","terminal"},{"source","I"},{"target","T"}});
  auto t = fx::random_T_table(3); json tj = t->to_json(); tj["prop"]="T";
  put("random_T_table.algebra.json", tj);
  // rocket
  Color c = Color::base("c");
  auto te=[&](int o,int i){return fx::T()->enumerate(Profile(o,c),Profile(i,c))->front();};
  auto al=te(4,1), be=te(2,4), ga=te(3,2);
  const auto& s1 = fx::slice_of(fx::T());
  const auto& s2 = *as_slice(*iterated(fx::T(), 2));
  auto x = s1.circ(ga, fx::T()->vcomp(be, al));
  auto y = s1.hcomp(s1.unit({Color::of(ga)}), s1.circ(be, al));
  auto g = Color::of(s2.circ(x, y));
  json m = encode_metagraph(g); m["prop"]="T";
  put("rocket.metagraph.json", m);
  json tr = m; tr["levels"][0].erase(tr["levels"][0].size()-1);
  put("truncated.metagraph.json", tr);
  put("rocket.element.json", {{"dim",3},{"element",g.element().to_json()},{"prop","T"}});
  put("slice_a.json", s1.file_json(s1.circ(ga, fx::T()->vcomp(be, al))));
  put("slice_b.json", s1.file_json(y));
}
