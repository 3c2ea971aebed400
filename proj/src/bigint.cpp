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

#include "ibetrust/bigint.hpp"

#include <stdexcept>

namespace ibetrust {

BigInt Mod(const BigInt &value, const BigInt &modulus)
{
    BigInt out;
    mpz_mod(out.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
    return out;
}

BigInt PowMod(const BigInt &base, const BigInt &exponent, const BigInt &modulus)
{
    if (exponent < 0)
    {
        return PowMod(InvMod(base, modulus), -exponent, modulus);
    }
    BigInt out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
    return out;
}

BigInt InvMod(const BigInt &value, const BigInt &modulus)
{
    BigInt out;
    if (mpz_invert(out.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t()) == 0)
    {
        throw std::domain_error("value has no inverse modulo " + modulus.get_str());
    }
    return out;
}

bool IsProbablePrime(const BigInt &value)
{
    return mpz_probab_prime_p(value.get_mpz_t(), 40) != 0;
}

std::size_t ByteLength(const BigInt &value)
{
    if (value == 0)
        return 1;
    return (mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8;
}

Bytes ToBytesFixed(const BigInt &value, std::size_t width)
{
    if (value < 0)
    {
        throw std::invalid_argument("cannot encode a negative integer");
    }
    Bytes out(width, 0);
    if (value == 0)
        return out;
    std::size_t needed = ByteLength(value);
    if (needed > width)
    {
        throw std::invalid_argument("integer needs " + std::to_string(needed) + " bytes, width is " +
                                    std::to_string(width));
    }
    std::size_t written = 0;
    mpz_export(out.data() + (width - needed), &written, 1, 1, 1, 0, value.get_mpz_t());
    return out;
}

Bytes ToBytesMinimal(const BigInt &value)
{
    return ToBytesFixed(value, ByteLength(value));
}

BigInt FromBytes(ByteView bytes)
{
    BigInt out;
    if (!bytes.empty())
    {
        mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
    }
    return out;
}

BigInt ParseBigInt(const std::string &text)
{
    BigInt out;
    int base = 10;
    std::string digits = text;
    if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X'))
    {
        base = 16;
        digits = digits.substr(2);
    }
    if (digits.empty() || out.set_str(digits, base) != 0)
    {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
    return out;
}

std::string ToHexString(const BigInt &value)
{
    return "0x" + value.get_str(16);
}

} // namespace ibetrust
