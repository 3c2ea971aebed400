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

#ifndef IBETRUST_BIGINT_HPP_
#define IBETRUST_BIGINT_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <string>

#include "ibetrust/bytes.hpp"

namespace ibetrust {

using BigInt = mpz_class;

/// Least non-negative residue of value mod modulus.
BigInt Mod(const BigInt &value, const BigInt &modulus);
BigInt PowMod(const BigInt &base, const BigInt &exponent, const BigInt &modulus);
/// Modular inverse; throws std::domain_error when value is not invertible.
BigInt InvMod(const BigInt &value, const BigInt &modulus);
bool IsProbablePrime(const BigInt &value);

std::size_t ByteLength(const BigInt &value);
/// Big-endian, left-padded to width bytes. Throws if value does not fit.
Bytes ToBytesFixed(const BigInt &value, std::size_t width);
Bytes ToBytesMinimal(const BigInt &value);
BigInt FromBytes(ByteView bytes);

BigInt ParseBigInt(const std::string &text);
std::string ToHexString(const BigInt &value);

} // namespace ibetrust

#endif // IBETRUST_BIGINT_HPP_
