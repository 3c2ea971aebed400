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

#include "ibetrust/rng.hpp"

#include <stdexcept>

namespace ibetrust {

std::uint64_t Rng::UniformBelow(std::uint64_t bound)
{
    if (bound == 0)
    {
        throw std::invalid_argument("UniformBelow: bound must be positive");
    }
    std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t draw;
    do
    {
        draw = NextU64();
    } while (draw >= limit);
    return draw % bound;
}

BigInt Rng::UniformBelow(const BigInt &bound)
{
    if (bound <= 0)
    {
        throw std::invalid_argument("UniformBelow: bound must be positive");
    }
    std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    std::size_t bytes = (bits + 7) / 8;
    unsigned extra = static_cast<unsigned>(bytes * 8 - bits);
    while (true)
    {
        Bytes raw = RandomBytes(bytes);
        raw[0] &= static_cast<std::uint8_t>(0xff >> extra);
        BigInt candidate = FromBytes(raw);
        if (candidate < bound)
            return candidate;
    }
}

BigInt Rng::NonZeroBelow(const BigInt &bound)
{
    if (bound <= 1)
    {
        throw std::invalid_argument("NonZeroBelow: bound must exceed 1");
    }
    return UniformBelow(BigInt(bound - 1)) + 1;
}

Bytes Rng::RandomBytes(std::size_t count)
{
    Bytes out;
    out.reserve(count);
    while (out.size() < count)
    {
        std::uint64_t word = NextU64();
        for (int i = 0; i < 8 && out.size() < count; ++i)
        {
            out.push_back(static_cast<std::uint8_t>(word >> (56 - 8 * i)));
        }
    }
    return out;
}

double Rng::UniformUnit()
{
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

Rng Rng::Fork()
{
    return Rng(NextU64() ^ 0x9e3779b97f4a7c15ULL);
}

} // namespace ibetrust
