// Copyright 2026 The lir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lir/injector.hpp"

#include "lir/errors.hpp"
#include "lir/random.hpp"

namespace lir {

void NoiseProfile::validate() const {
  if (!(substitution_rate >= 0.0 && substitution_rate <= 1.0)) throw ConfigError("substitution_rate must be in [0,1]");
  if (!(homophone_bias >= 0.0 && homophone_bias <= 1.0)) throw ConfigError("homophone_bias must be in [0,1]");
}

CorruptResult corrupt(const Transcript& clean, const NoiseProfile& profile, const SubstitutionTable& table) {
  profile.validate();
  const Language lang = clean.language;
  const auto units = split_units(clean.text, lang);
  if (units.empty()) throw EmptyTranscript();

  Rng rng(profile.seed);
  CorruptResult out{clean, {}};
  std::vector<std::string> noisy;
  noisy.reserve(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    std::string unit = units[i];
    const std::string key = unit_key(unit, lang);
    const auto options = key.empty() ? std::vector<Substitution>{} : similar_units(key, lang, table, table.threshold());
    if (!options.empty() && rng.bernoulli(profile.substitution_rate)) {
      std::vector<Substitution> homophones;
      for (const auto& o : options) {
        if (o.weight >= 1.0) homophones.push_back(o);
      }
      const bool prefer_homophone = rng.bernoulli(profile.homophone_bias);
      const auto& pool = prefer_homophone && !homophones.empty() ? homophones : options;
      const std::string& sub = pool[rng.below(pool.size())].unit;
      std::string replaced = lang == Language::en ? restyle_word(unit, sub) : sub;
      out.edits.push_back({InjectedKind::substitution, i, unit, replaced});
      unit = std::move(replaced);
    }
    if (profile.insertions_deletions && rng.bernoulli(profile.substitution_rate / 4.0)) {
      if (rng.bernoulli(0.5)) {
        out.edits.push_back({InjectedKind::deletion, i, unit, ""});
        continue;
      }
      out.edits.push_back({InjectedKind::insertion, i, "", unit});
      noisy.push_back(unit);
    }
    noisy.push_back(std::move(unit));
  }
  if (!out.edits.empty()) out.noisy.text = join_units(noisy, lang);
  return out;
}

}  // namespace lir
