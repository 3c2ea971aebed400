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

// Slow reference implementations used as oracles. They share no code with
// the library beyond the point and integer types.

#ifndef IBETRUST_TESTS_ORACLE_HPP_
#define IBETRUST_TESTS_ORACLE_HPP_

#include <optional>
#include <utility>

#include "ibetrust/bigint.hpp"
#include "ibetrust/ibe/curve.hpp"

namespace oracle {

using ibetrust::BigInt;

inline BigInt Reduce(const BigInt &a, const BigInt &p)
{
    BigInt r = a % p;
    if (r < 0)
        r += p;
    return r;
}

inline BigInt Power(BigInt base, BigInt e, const BigInt &p)
{
    BigInt out = 1;
    base = Reduce(base, p);
    while (e > 0)
    {
        if (e % 2 == 1)
            out = out * base % p;
        base = base * base % p;
        e /= 2;
    }
    return out;
}

inline BigInt Inverse(const BigInt &a, const BigInt &p)
{
    return Power(a, p - 2, p);
}

// a + b*w with w^2 = -1 - w.
struct F2
{
    BigInt a;
    BigInt b;
};

inline F2 Mul(const F2 &x, const F2 &y, const BigInt &p)
{
    BigInt ac = x.a * y.a;
    BigInt bd = x.b * y.b;
    return F2{Reduce(ac - bd, p), Reduce(x.a * y.b + x.b * y.a - bd, p)};
}

inline F2 Sub(const F2 &x, const F2 &y, const BigInt &p)
{
    return F2{Reduce(x.a - y.a, p), Reduce(x.b - y.b, p)};
}

inline F2 Scale(const F2 &x, const BigInt &k, const BigInt &p)
{
    return F2{Reduce(x.a * k, p), Reduce(x.b * k, p)};
}

inline F2 Power(F2 base, BigInt e, const BigInt &p)
{
    F2 out{1, 0};
    while (e > 0)
    {
        if (e % 2 == 1)
            out = Mul(out, base, p);
        base = Mul(base, base, p);
        e /= 2;
    }
    return out;
}

inline F2 Inverse(const F2 &x, const BigInt &p)
{
    return Power(x, p * p - 2, p);
}

using Point = std::optional<std::pair<BigInt, BigInt>>;

inline Point Add(const Point &P, const Point &Q, const BigInt &p)
{
    if (!P)
        return Q;
    if (!Q)
        return P;
    auto [x1, y1] = *P;
    auto [x2, y2] = *Q;
    if (x1 == x2 && Reduce(y1 + y2, p) == 0)
        return std::nullopt;
    BigInt l = (x1 == x2) ? Reduce(3 * x1 * x1 * Inverse(2 * y1, p), p) : Reduce((y2 - y1) * Inverse(x2 - x1, p), p);
    BigInt x3 = Reduce(l * l - x1 - x2, p);
    return std::make_pair(x3, Reduce(l * (x1 - x3) - y1, p));
}

inline Point DoubleAndAdd(Point P, BigInt k, const BigInt &p)
{
    Point out;
    while (k > 0)
    {
        if (k % 2 == 1)
            out = Add(out, P, p);
        P = Add(P, P, p);
        k /= 2;
    }
    return out;
}

inline Point FromLibrary(const ibetrust::ibe::G1Point &g)
{
    if (g.infinity)
        return std::nullopt;
    return std::make_pair(g.x, g.y);
}

// Reduced Tate pairing f_{q,A}((w*xB, yB))^((p^2-1)/q), Miller loop with
// every line and vertical kept as numerator / denominator.
inline F2 Pairing(const Point &A, const Point &B, const BigInt &p, const BigInt &q)
{
    if (!A || !B)
        return F2{1, 0};
    const F2 xq{0, B->first};
    const F2 yq{B->second, 0};
    F2 num{1, 0};
    F2 den{1, 0};

    auto step = [&](const Point &T, const Point &S) {
        auto [xt, yt] = *T;
        Point sum = Add(T, S, p);
        if (!sum)
        {
            num = Mul(num, Sub(xq, F2{xt, 0}, p), p);
            return sum;
        }
        auto [xs, ys] = *S;
        BigInt l = (xt == xs && yt == ys) ? Reduce(3 * xt * xt * Inverse(2 * yt, p), p)
                                          : Reduce((ys - yt) * Inverse(xs - xt, p), p);
        F2 line = Sub(Sub(yq, F2{yt, 0}, p), Scale(Sub(xq, F2{xt, 0}, p), l, p), p);
        num = Mul(num, line, p);
        den = Mul(den, Sub(xq, F2{sum->first, 0}, p), p);
        return sum;
    };

    Point T = A;
    std::size_t bits = mpz_sizeinbase(q.get_mpz_t(), 2);
    for (std::size_t i = bits - 1; i-- > 0;)
    {
        num = Mul(num, num, p);
        den = Mul(den, den, p);
        T = step(T, T);
        if (mpz_tstbit(q.get_mpz_t(), i))
            T = step(T, A);
    }
    F2 f = Mul(num, Inverse(den, p), p);
    return Power(f, (p * p - 1) / q, p);
}

} // namespace oracle

#endif // IBETRUST_TESTS_ORACLE_HPP_
