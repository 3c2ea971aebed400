/*
 * Copyright (c) 2026 The ibetrust Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef IBETRUST_RNG_HPP_
#define IBETRUST_RNG_HPP_

#include <cstdint>
#include <random>

#include "ibetrust/bigint.hpp"
#include "ibetrust/bytes.hpp"

namespace ibetrust {

/**
 * Seeded generator used for every random draw in the library.
 *
 * Output depends only on the seed (mt19937_64 is fully specified), and all
 * range reductions are done here by rejection sampling, so sequences are
 * identical across standard libraries.
 */
class Rng
{
public:
    explicit Rng(std::uint64_t seed)
        : mEngine(seed)
    {
    }

    std::uint64_t NextU64() { return mEngine(); }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t UniformBelow(std::uint64_t bound);

    /// Uniform in [0, bound). bound must be positive.
    BigInt UniformBelow(const BigInt &bound);

    /// Uniform in [1, bound - 1].
    BigInt NonZeroBelow(const BigInt &bound);

    Bytes RandomBytes(std::size_t count);

    double UniformUnit();

    /// Derives an independent child generator, e.g. one per simulated node.
    Rng Fork();

private:
    std::mt19937_64 mEngine;
};

} // namespace ibetrust

#endif // IBETRUST_RNG_HPP_
