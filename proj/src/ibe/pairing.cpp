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

#include "ibetrust/ibe/pairing.hpp"

#include <atomic>
#include <stdexcept>

namespace ibetrust::ibe {

namespace {

std::atomic<std::uint64_t> gPairingCount{0};

/// Accumulates the Miller function as numerator / denominator.
struct MillerValue
{
    Fp2 numerator;
    Fp2 denominator;
};

class MillerLoop
{
public:
    MillerLoop(const Curve &curve, const G1Point &b)
        : mCurve(curve)
        , mField(curve.P())
        , mXb(b.x)
        , mYb(b.y)
    {
    }

    Fp2 Run(const G1Point &a)
    {
        const BigInt &q = mCurve.Q();
        MillerValue f{mField.One(), mField.One()};
        G1Point t = a;

        std::size_t bits = mpz_sizeinbase(q.get_mpz_t(), 2);
        for (std::size_t i = bits - 1; i-- > 0;)
        {
            f.numerator = mField.Square(f.numerator);
            f.denominator = mField.Square(f.denominator);
            t = Step(f, t, t);
            if (mpz_tstbit(q.get_mpz_t(), i))
            {
                t = Step(f, t, a);
            }
        }
        return mField.Mul(f.numerator, mField.Inverse(f.denominator));
    }

private:
    // Multiplies f by l_{T,S}(phi(B)) / v_{T+S}(phi(B)) and returns T + S.
    G1Point Step(MillerValue &f, const G1Point &t, const G1Point &s)
    {
        const BigInt &p = mCurve.P();
        if (t.infinity || s.infinity)
        {
            return mCurve.Add(t, s);
        }

        BigInt lambda;
        if (t.x == s.x)
        {
            if (Mod(t.y + s.y, p) == 0)
            {
                // Vertical line through T and -T; the sum is infinity.
                MultiplyInto(f.numerator, Vertical(t.x));
                return G1Point::Infinity();
            }
            lambda = Mod(3 * t.x * t.x * InvMod(2 * t.y, p), p);
        }
        else
        {
            lambda = Mod((s.y - t.y) * InvMod(Mod(s.x - t.x, p), p), p);
        }

        // l(Q) = yQ - yT - lambda (xQ - xT) with xQ = zeta*xB, yQ = yB.
        Fp2 line{Mod(mYb - t.y + lambda * t.x, p), Mod(-lambda * mXb, p)};
        MultiplyInto(f.numerator, line);

        G1Point sum = mCurve.Add(t, s);
        if (!sum.infinity)
        {
            MultiplyInto(f.denominator, Vertical(sum.x));
        }
        return sum;
    }

    Fp2 Vertical(const BigInt &x) const { return Fp2{Mod(-x, mCurve.P()), mXb}; }

    // Factors lying in F_p^* are erased by the final exponentiation, since
    // p - 1 divides (p^2 - 1) / q. Skipping them also avoids zero factors.
    void MultiplyInto(Fp2 &acc, const Fp2 &factor) const
    {
        if (factor.c1 == 0)
            return;
        acc = mField.Mul(acc, factor);
    }

    const Curve &mCurve;
    Fp2Field mField;
    BigInt mXb;
    BigInt mYb;
};

} // namespace

Fp2 Fp2Field::Mul(const Fp2 &a, const Fp2 &b) const
{
    // (a0 + a1 z)(b0 + b1 z) with z^2 = -z - 1.
    BigInt t = a.c1 * b.c1;
    return Fp2{Mod(a.c0 * b.c0 - t, mP), Mod(a.c0 * b.c1 + a.c1 * b.c0 - t, mP)};
}

Fp2 Fp2Field::Conjugate(const Fp2 &a) const
{
    // a0 + a1 z^2 = (a0 - a1) - a1 z
    return Fp2{Mod(a.c0 - a.c1, mP), Mod(-a.c1, mP)};
}

Fp2 Fp2Field::Inverse(const Fp2 &a) const
{
    BigInt norm = Mod(a.c0 * a.c0 - a.c0 * a.c1 + a.c1 * a.c1, mP);
    BigInt inv = InvMod(norm, mP);
    Fp2 conj = Conjugate(a);
    return Fp2{Mod(conj.c0 * inv, mP), Mod(conj.c1 * inv, mP)};
}

Fp2 Fp2Field::Pow(const Fp2 &a, const BigInt &exponent) const
{
    if (exponent < 0)
        return Pow(Inverse(a), -exponent);
    Fp2 result = One();
    std::size_t bits = exponent == 0 ? 0 : mpz_sizeinbase(exponent.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;)
    {
        result = Square(result);
        if (mpz_tstbit(exponent.get_mpz_t(), i))
            result = Mul(result, a);
    }
    return result;
}

GtElement GtIdentity()
{
    return GtElement{Fp2{1, 0}};
}

bool GtIsIdentity(const GtElement &g)
{
    return g.value.c0 == 1 && g.value.c1 == 0;
}

GtElement GtMul(const Curve &curve, const GtElement &a, const GtElement &b)
{
    return GtElement{Fp2Field(curve.P()).Mul(a.value, b.value)};
}

GtElement GtPow(const Curve &curve, const GtElement &g, const BigInt &exponent)
{
    return GtElement{Fp2Field(curve.P()).Pow(g.value, exponent)};
}

bool GtIsValid(const Curve &curve, const GtElement &g)
{
    Fp2Field field(curve.P());
    if (field.IsZero(g.value) || g.value.c0 >= curve.P() || g.value.c1 >= curve.P() || g.value.c0 < 0 ||
        g.value.c1 < 0)
        return false;
    return GtIsIdentity(GtElement{field.Pow(g.value, curve.Q())});
}

Bytes GtEncode(const Curve &curve, const GtElement &g)
{
    Bytes out = ToBytesFixed(g.value.c0, curve.CoordinateBytes());
    Append(out, ToBytesFixed(g.value.c1, curve.CoordinateBytes()));
    return out;
}

GtElement GtDecode(const Curve &curve, ByteView bytes)
{
    std::size_t width = curve.CoordinateBytes();
    if (bytes.size() != 2 * width)
    {
        throw DecodeError("GT encoding must be " + std::to_string(2 * width) + " bytes");
    }
    GtElement g{Fp2{FromBytes(bytes.first(width)), FromBytes(bytes.subspan(width))}};
    if (!GtIsValid(curve, g))
    {
        throw DecodeError("not an element of the order-q target group");
    }
    return g;
}

GtElement Pairing(const Curve &curve, const G1Point &a, const G1Point &b)
{
    if (!curve.IsOnCurve(a) || !curve.IsOnCurve(b))
    {
        throw std::invalid_argument("pairing argument is not on the curve");
    }
    gPairingCount.fetch_add(1, std::memory_order_relaxed);
    if (a.infinity || b.infinity)
    {
        return GtIdentity();
    }

    Fp2Field field(curve.P());
    Fp2 f = MillerLoop(curve, b).Run(a);

    // f^((p^2-1)/q) = (f^(p-1))^((p+1)/q) and f^(p-1) = conj(f) / f.
    Fp2 unitary = field.Mul(field.Conjugate(f), field.Inverse(f));
    return GtElement{field.Pow(unitary, curve.Cofactor())};
}

std::uint64_t PairingCount()
{
    return gPairingCount.load(std::memory_order_relaxed);
}

} // namespace ibetrust::ibe
