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

#ifndef IBETRUST_IBE_CURVE_HPP_
#define IBETRUST_IBE_CURVE_HPP_

#include <cstddef>

#include "ibetrust/bigint.hpp"
#include "ibetrust/bytes.hpp"

namespace ibetrust::ibe {

/**
 * Affine point on E: y^2 = x^3 + 1 over F_p, or the point at infinity.
 */
struct G1Point
{
    BigInt x;
    BigInt y;
    bool infinity = true;

    static G1Point Infinity() { return G1Point{}; }
    static G1Point At(BigInt x, BigInt y) { return G1Point{std::move(x), std::move(y), false}; }

    friend bool operator==(const G1Point &a, const G1Point &b)
    {
        if (a.infinity || b.infinity)
            return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }
};

/**
 * The supersingular curve y^2 = x^3 + 1 over F_p with p = 2 mod 3, so that
 * #E(F_p) = p + 1, together with the prime subgroup order q | p + 1.
 */
class Curve
{
public:
    Curve(BigInt p, BigInt q);

    const BigInt &P() const { return mP; }
    const BigInt &Q() const { return mQ; }
    const BigInt &Cofactor() const { return mCofactor; }

    /// Width of one encoded coordinate.
    std::size_t CoordinateBytes() const { return mCoordinateBytes; }
    std::size_t PointBytes() const { return 2 * mCoordinateBytes; }

    bool IsOnCurve(const G1Point &point) const;
    bool HasOrderQ(const G1Point &point) const;

    G1Point Negate(const G1Point &point) const;
    G1Point Add(const G1Point &a, const G1Point &b) const;
    G1Point Double(const G1Point &point) const;
    G1Point Multiply(const G1Point &point, const BigInt &scalar) const;

    /// The unique cube root in F_p, which exists because gcd(3, p - 1) = 1.
    BigInt CubeRoot(const BigInt &value) const;

    /// Point whose y-coordinate is y; always exists on this curve.
    G1Point PointFromY(const BigInt &y) const;

    /// Fixed-width x || y; infinity is all zero bytes ((0, 0) is not on the curve).
    Bytes Encode(const G1Point &point) const;
    /// Throws DecodeError for wrong length, out-of-range coordinates, or off-curve points.
    G1Point Decode(ByteView bytes) const;

    friend bool operator==(const Curve &a, const Curve &b) { return a.mP == b.mP && a.mQ == b.mQ; }

private:
    BigInt mP;
    BigInt mQ;
    BigInt mCofactor;
    BigInt mCubeRootExponent;
    std::size_t mCoordinateBytes;
};

} // namespace ibetrust::ibe

#endif // IBETRUST_IBE_CURVE_HPP_
