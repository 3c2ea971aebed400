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

#ifndef IBETRUST_IBE_PAIRING_HPP_
#define IBETRUST_IBE_PAIRING_HPP_

#include <cstdint>

#include "ibetrust/bigint.hpp"
#include "ibetrust/ibe/curve.hpp"

namespace ibetrust::ibe {

/**
 * Element c0 + c1*zeta of F_{p^2} = F_p[zeta] / (zeta^2 + zeta + 1).
 *
 * zeta is a primitive cube root of unity; the polynomial is irreducible
 * over F_p because p = 2 mod 3.
 */
struct Fp2
{
    BigInt c0;
    BigInt c1;

    friend bool operator==(const Fp2 &a, const Fp2 &b) { return a.c0 == b.c0 && a.c1 == b.c1; }
};

/// Arithmetic in F_{p^2} for a fixed characteristic.
class Fp2Field
{
public:
    explicit Fp2Field(BigInt p)
        : mP(std::move(p))
    {
    }

    const BigInt &P() const { return mP; }

    Fp2 One() const { return Fp2{1, 0}; }
    Fp2 Zeta() const { return Fp2{0, 1}; }
    Fp2 Mul(const Fp2 &a, const Fp2 &b) const;
    Fp2 Square(const Fp2 &a) const { return Mul(a, a); }
    /// Frobenius x -> x^p, which maps zeta to zeta^2.
    Fp2 Conjugate(const Fp2 &a) const;
    Fp2 Inverse(const Fp2 &a) const;
    Fp2 Pow(const Fp2 &a, const BigInt &exponent) const;
    bool IsZero(const Fp2 &a) const { return a.c0 == 0 && a.c1 == 0; }

private:
    BigInt mP;
};

/**
 * Element of the order-q subgroup of F_{p^2}^*, the pairing's target group.
 */
struct GtElement
{
    Fp2 value;

    friend bool operator==(const GtElement &a, const GtElement &b) { return a.value == b.value; }
};

GtElement GtIdentity();
bool GtIsIdentity(const GtElement &g);
GtElement GtMul(const Curve &curve, const GtElement &a, const GtElement &b);
GtElement GtPow(const Curve &curve, const GtElement &g, const BigInt &exponent);
/// True when g is non-zero and g^q = 1.
bool GtIsValid(const Curve &curve, const GtElement &g);

/// Canonical encoding: c0 || c1, each CoordinateBytes() wide, big-endian.
Bytes GtEncode(const Curve &curve, const GtElement &g);
GtElement GtDecode(const Curve &curve, ByteView bytes);

/**
 * Modified Tate pairing e(A, B) = f_{q,A}(phi(B))^((p^2 - 1) / q) with the
 * distortion map phi(x, y) = (zeta*x, y).
 *
 * Either argument at infinity yields the identity. Points off the curve
 * throw std::invalid_argument. Every evaluation increments PairingCount().
 */
GtElement Pairing(const Curve &curve, const G1Point &a, const G1Point &b);

/// Number of pairings computed by this process so far.
std::uint64_t PairingCount();

} // namespace ibetrust::ibe

#endif // IBETRUST_IBE_PAIRING_HPP_
