#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hda/prop.hpp"

namespace hda {

struct LawResult {
  std::string law;
  bool pass = true;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // instances outside a truncation
  std::optional<json> witness;
};

struct LawReport {
  std::string subject;
  std::string mode;  // "exhaustive" or "sampled"
  std::vector<LawResult> laws;

  bool ok() const;
  json first_failure() const;
  json to_json() const;
  LawResult& at(const std::string& law);
};

struct LawOptions {
  int samples = 200;
  std::uint64_t seed = 0;
  int max_arity = 3;
  // Exhaustive mode is used when all_elements() is at most this large.
  std::size_t exhaustive_limit = 40;
};

LawReport check_prop_laws(const Prop& p, const LawOptions& opt = {});

// Checks that a map preserves hcomp, vcomp, biact and units on samples of
// its source.
LawReport check_prop_map(const PropMap& f, const LawOptions& opt = {});

}  // namespace hda
