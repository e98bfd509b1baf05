// Copyright 2026 The hhlprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hhlprep/generators.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "hhlprep/random.hpp"

namespace hhlprep {

AmplitudeVector uniform_vector(unsigned n_b) {
  return AmplitudeVector::normalized(std::vector<Amplitude>(std::size_t{1} << n_b, 1.0));
}

AmplitudeVector basis_vector(unsigned n_b, std::size_t index) {
  std::vector<Amplitude> e(std::size_t{1} << n_b);
  if (index >= e.size()) throw IndexError("basis index out of range");
  e[index] = 1.0;
  return AmplitudeVector::from_unit(std::move(e));
}

AmplitudeVector random_real_vector(unsigned n_b, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Amplitude> e(std::size_t{1} << n_b);
  for (auto& a : e) a = rng.normal();
  return AmplitudeVector::normalized(std::move(e));
}

AmplitudeVector random_complex_vector(unsigned n_b, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Amplitude> e(std::size_t{1} << n_b);
  for (auto& a : e) {
    const double re = rng.normal();
    a = Amplitude(re, rng.normal());
  }
  return AmplitudeVector::normalized(std::move(e));
}

GeneratedInput exact_representable_vector(unsigned n_b, unsigned n_c, std::uint64_t seed,
                                          bool complex_phases) {
  if (n_c < 2) throw ValidationError("exact generator needs n_c >= 2");
  Rng rng(seed);
  const std::int64_t top = (std::int64_t{1} << (n_c - 1)) - 1;
  const std::size_t n = std::size_t{1} << n_b;
  std::vector<std::int64_t> m(n);
  double norm_sq = 0.0;
  while (norm_sq == 0.0) {
    norm_sq = 0.0;
    for (auto& v : m) {
      v = complex_phases ? rng.uniform_int(0, top) : rng.uniform_int(-top, top);
      norm_sq += double(v) * double(v);
    }
  }
  const double norm = std::sqrt(norm_sq);
  std::vector<Amplitude> e(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double mag = double(m[j]) / norm;
    e[j] = complex_phases ? std::polar(mag, 2.0 * std::numbers::pi * rng.uniform())
                          : Amplitude(mag, 0.0);
  }
  const double t = 2.0 * std::numbers::pi * norm / static_cast<double>(std::uint64_t{1} << n_c);
  // Tiny normalization drift is absorbed here; the integers stay exact to 1e-12.
  return {AmplitudeVector::normalized(std::move(e)), t};
}

GeneratedInput parse_generator(std::string_view spec) {
  constexpr std::string_view prefix = "gen:";
  if (spec.substr(0, prefix.size()) != prefix) {
    throw FormatError("generator spec must start with 'gen:'");
  }
  spec.remove_prefix(prefix.size());
  const auto colon = spec.find(':');
  const std::string kind(spec.substr(0, colon));
  std::map<std::string, std::uint64_t> keys;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw FormatError("generator option '" + std::string(item) + "' needs key=value");
      }
      const std::string key(item.substr(0, eq));
      const std::string value(item.substr(eq + 1));
      try {
        std::size_t used = 0;
        keys[key] = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw FormatError("generator option '" + key + "' needs an unsigned integer");
      }
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  const auto get = [&](const std::string& key, std::uint64_t def) {
    const auto it = keys.find(key);
    return it == keys.end() ? def : it->second;
  };
  const auto n_b = static_cast<unsigned>(get("n_b", 2));
  const std::uint64_t seed = get("seed", 0);
  if (kind == "uniform") return {uniform_vector(n_b), std::nullopt};
  if (kind == "basis") return {basis_vector(n_b, get("index", 0)), std::nullopt};
  if (kind == "random") return {random_real_vector(n_b, seed), std::nullopt};
  if (kind == "random_complex") return {random_complex_vector(n_b, seed), std::nullopt};
  if (kind == "exact") {
    return exact_representable_vector(n_b, static_cast<unsigned>(get("n_c", 4)), seed);
  }
  if (kind == "exact_complex") {
    return exact_representable_vector(n_b, static_cast<unsigned>(get("n_c", 4)), seed, true);
  }
  throw FormatError("unknown generator kind '" + kind + "'");
}

}  // namespace hhlprep
