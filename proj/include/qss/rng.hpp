// Copyright 2026 The QSS Authors
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

#ifndef QSS_RNG_HPP
#define QSS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace qss {

/// Seedable, splittable generator. Every stochastic operation takes one of these explicitly.
///
/// `split(stream)` derives an independent child generator from this generator's key and the
/// stream index only, so child streams do not depend on how many draws the parent has made.
/// Parallel loops split one child per work item (e.g. per protocol round) to stay deterministic
/// regardless of thread count.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : Rng(seed, 0) {}

    Rng split(std::uint64_t stream) const { return Rng(key_, stream + 1); }

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits. Independent of the standard library's
    /// distribution implementations, so sampled transcripts are portable.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool coin() { return (engine_() >> 63) != 0; }

    /// Standard normal deviate (Box-Muller; one draw discarded for simplicity).
    double gaussian() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
    }

    std::uint64_t key() const { return key_; }

   private:
    Rng(std::uint64_t parent_key, std::uint64_t stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(parent_key), static_cast<std::uint32_t>(parent_key >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        std::uint32_t words[2];
        seq.generate(words, words + 2);
        key_ = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
        engine_.seed(seq);
    }

    std::uint64_t key_ = 0;
    std::mt19937_64 engine_;
};

}  // namespace qss

#endif  // QSS_RNG_HPP
