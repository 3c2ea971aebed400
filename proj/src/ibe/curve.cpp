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

#include "ibetrust/ibe/curve.hpp"

#include <stdexcept>

namespace ibetrust::ibe {

Curve::Curve(BigInt p, BigInt q)
    : mP(std::move(p))
    , mQ(std::move(q))
{
    if (mP <= 3 || mQ <= 1)
    {
        throw std::invalid_argument("curve parameters out of range");
    }
    if (Mod(mP, 3) != 2)
    {
        throw std::invalid_argument("p not = 2 mod 3");
    }
    BigInt order = mP + 1;
    if (Mod(order, mQ) != 0)
    {
        throw std::invalid_argument("q does not divide p+1");
    }
    mCofactor = order / mQ;
    mCubeRootExponent = (2 * mP - 1) / 3;
    mCoordinateBytes = ByteLength(mP);
}

bool Curve::IsOnCurve(const G1Point &point) const
{
    if (point.infinity)
        return true;
    if (point.x < 0 || point.x >= mP || point.y < 0 || point.y >= mP)
        return false;
    BigInt lhs = Mod(point.y * point.y, mP);
    BigInt rhs = Mod(point.x * point.x * point.x + 1, mP);
    return lhs == rhs;
}

bool Curve::HasOrderQ(const G1Point &point) const
{
    return !point.infinity && IsOnCurve(point) && Multiply(point, mQ).infinity;
}

G1Point Curve::Negate(const G1Point &point) const
{
    if (point.infinity)
        return point;
    return G1Point::At(point.x, Mod(-point.y, mP));
}

G1Point Curve::Double(const G1Point &point) const
{
    if (point.infinity || point.y == 0)
        return G1Point::Infinity();
    BigInt lambda = Mod(3 * point.x * point.x * InvMod(2 * point.y, mP), mP);
    BigInt x3 = Mod(lambda * lambda - 2 * point.x, mP);
    BigInt y3 = Mod(lambda * (point.x - x3) - point.y, mP);
    return G1Point::At(std::move(x3), std::move(y3));
}

G1Point Curve::Add(const G1Point &a, const G1Point &b) const
{
    if (a.infinity)
        return b;
    if (b.infinity)
        return a;
    if (a.x == b.x)
    {
        if (Mod(a.y + b.y, mP) == 0)
            return G1Point::Infinity();
        return Double(a);
    }
    BigInt lambda = Mod((b.y - a.y) * InvMod(Mod(b.x - a.x, mP), mP), mP);
    BigInt x3 = Mod(lambda * lambda - a.x - b.x, mP);
    BigInt y3 = Mod(lambda * (a.x - x3) - a.y, mP);
    return G1Point::At(std::move(x3), std::move(y3));
}

G1Point Curve::Multiply(const G1Point &point, const BigInt &scalar) const
{
    if (scalar < 0)
        return Multiply(Negate(point), -scalar);
    G1Point result = G1Point::Infinity();
    if (scalar == 0 || point.infinity)
        return result;
    std::size_t bits = mpz_sizeinbase(scalar.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;)
    {
        result = Double(result);
        if (mpz_tstbit(scalar.get_mpz_t(), i))
            result = Add(result, point);
    }
    return result;
}

BigInt Curve::CubeRoot(const BigInt &value) const
{
    return PowMod(Mod(value, mP), mCubeRootExponent, mP);
}

G1Point Curve::PointFromY(const BigInt &y) const
{
    BigInt y0 = Mod(y, mP);
    return G1Point::At(CubeRoot(y0 * y0 - 1), y0);
}

Bytes Curve::Encode(const G1Point &point) const
{
    if (point.infinity)
        return Bytes(PointBytes(), 0);
    Bytes out = ToBytesFixed(point.x, mCoordinateBytes);
    Append(out, ToBytesFixed(point.y, mCoordinateBytes));
    return out;
}

G1Point Curve::Decode(ByteView bytes) const
{
    if (bytes.size() != PointBytes())
    {
        throw DecodeError("point encoding must be " + std::to_string(PointBytes()) + " bytes");
    }
    bool allZero = true;
    for (std::uint8_t b : bytes)
        allZero = allZero && b == 0;
    if (allZero)
        return G1Point::Infinity();

    G1Point point = G1Point::At(FromBytes(bytes.first(mCoordinateBytes)), FromBytes(bytes.subspan(mCoordinateBytes)));
    if (!IsOnCurve(point))
    {
        throw DecodeError("point is not on the curve");
    }
    return point;
}

} // namespace ibetrust::ibe
