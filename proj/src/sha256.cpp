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

#include "ibetrust/sha256.hpp"

#include <cstring>

namespace ibetrust {

namespace {

constexpr std::array<std::uint32_t, 64> kRoundConstants = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2,
};

constexpr std::uint32_t Rotr(std::uint32_t x, int n)
{
    return (x >> n) | (x << (32 - n));
}

} // namespace

Sha256::Sha256()
{
    Reset();
}

void Sha256::Reset()
{
    mState = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a, 0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    mBuffered = 0;
    mTotalBytes = 0;
}

void Sha256::Compress(const std::uint8_t *block)
{
    std::array<std::uint32_t, 64> w;
    for (int i = 0; i < 16; ++i)
    {
        w[i] = (std::uint32_t{block[4 * i]} << 24) | (std::uint32_t{block[4 * i + 1]} << 16) |
               (std::uint32_t{block[4 * i + 2]} << 8) | std::uint32_t{block[4 * i + 3]};
    }
    for (int i = 16; i < 64; ++i)
    {
        std::uint32_t s0 = Rotr(w[i - 15], 7) ^ Rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
        std::uint32_t s1 = Rotr(w[i - 2], 17) ^ Rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
        w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }

    std::uint32_t a = mState[0], b = mState[1], c = mState[2], d = mState[3];
    std::uint32_t e = mState[4], f = mState[5], g = mState[6], h = mState[7];
    for (int i = 0; i < 64; ++i)
    {
        std::uint32_t s1 = Rotr(e, 6) ^ Rotr(e, 11) ^ Rotr(e, 25);
        std::uint32_t ch = (e & f) ^ (~e & g);
        std::uint32_t t1 = h + s1 + ch + kRoundConstants[i] + w[i];
        std::uint32_t s0 = Rotr(a, 2) ^ Rotr(a, 13) ^ Rotr(a, 22);
        std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
        std::uint32_t t2 = s0 + maj;
        h = g;
        g = f;
        f = e;
        e = d + t1;
        d = c;
        c = b;
        b = a;
        a = t1 + t2;
    }
    mState[0] += a;
    mState[1] += b;
    mState[2] += c;
    mState[3] += d;
    mState[4] += e;
    mState[5] += f;
    mState[6] += g;
    mState[7] += h;
}

Sha256 &Sha256::Update(ByteView data)
{
    mTotalBytes += data.size();
    std::size_t pos = 0;
    if (mBuffered > 0)
    {
        std::size_t take = std::min(kBlockSize - mBuffered, data.size());
        std::memcpy(mBuffer.data() + mBuffered, data.data(), take);
        mBuffered += take;
        pos = take;
        if (mBuffered < kBlockSize)
            return *this;
        Compress(mBuffer.data());
        mBuffered = 0;
    }
    while (data.size() - pos >= kBlockSize)
    {
        Compress(data.data() + pos);
        pos += kBlockSize;
    }
    if (pos < data.size())
    {
        mBuffered = data.size() - pos;
        std::memcpy(mBuffer.data(), data.data() + pos, mBuffered);
    }
    return *this;
}

Sha256 &Sha256::Update(std::string_view text)
{
    return Update(ByteView(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
}

Sha256::Digest Sha256::Finish()
{
    std::uint64_t bitLength = mTotalBytes * 8;
    std::array<std::uint8_t, 72> pad{};
    pad[0] = 0x80;
    std::size_t padLength = (mBuffered < 56) ? (56 - mBuffered) : (120 - mBuffered);
    for (int i = 0; i < 8; ++i)
    {
        pad[padLength + i] = static_cast<std::uint8_t>(bitLength >> (56 - 8 * i));
    }
    Update(ByteView(pad.data(), padLength + 8));

    Digest out;
    for (int i = 0; i < 8; ++i)
    {
        out[4 * i] = static_cast<std::uint8_t>(mState[i] >> 24);
        out[4 * i + 1] = static_cast<std::uint8_t>(mState[i] >> 16);
        out[4 * i + 2] = static_cast<std::uint8_t>(mState[i] >> 8);
        out[4 * i + 3] = static_cast<std::uint8_t>(mState[i]);
    }
    Reset();
    return out;
}

Sha256::Digest Sha256Of(ByteView data)
{
    return Sha256().Update(data).Finish();
}

Sha256::Digest Sha256Of(std::string_view text)
{
    return Sha256().Update(text).Finish();
}

std::string DigestHex(const Sha256::Digest &digest)
{
    return ToHex(digest);
}

Sha256::Digest HmacSha256(ByteView key, ByteView message)
{
    std::array<std::uint8_t, Sha256::kBlockSize> block{};
    if (key.size() > Sha256::kBlockSize)
    {
        Sha256::Digest hashed = Sha256Of(key);
        std::memcpy(block.data(), hashed.data(), hashed.size());
    }
    else
    {
        std::memcpy(block.data(), key.data(), key.size());
    }

    std::array<std::uint8_t, Sha256::kBlockSize> inner, outer;
    for (std::size_t i = 0; i < block.size(); ++i)
    {
        inner[i] = block[i] ^ 0x36;
        outer[i] = block[i] ^ 0x5c;
    }
    Sha256::Digest innerHash = Sha256().Update(inner).Update(message).Finish();
    return Sha256().Update(outer).Update(innerHash).Finish();
}

} // namespace ibetrust
