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

#include "ibetrust/ibe/ibe.hpp"

#include <algorithm>
#include <stdexcept>

#include "ibetrust/sha256.hpp"

namespace ibetrust::ibe {

namespace {

const char *const kDemoP = "0xc79df99d5db0c3f11d54098a2108f4cb7d88bf1e39ca5b85fafa98c8b1882cad";
const char *const kDemoQ = "0xfa7ff7fcb1cec3b115bec9ff2fc0d13b5d57f2a5";

constexpr std::uint8_t kFileVersion = 1;

Bytes TruncateBits(const Sha256::Digest &digest, unsigned bits)
{
    std::size_t bytes = (bits + 7) / 8;
    Bytes out(digest.begin(), digest.begin() + static_cast<std::ptrdiff_t>(bytes));
    unsigned spare = static_cast<unsigned>(bytes * 8 - bits);
    if (spare > 0)
    {
        out.back() &= static_cast<std::uint8_t>(0xff << spare);
    }
    return out;
}

Bytes Xor(ByteView a, ByteView b, std::size_t length)
{
    Bytes out(length);
    for (std::size_t i = 0; i < length; ++i)
        out[i] = a[i] ^ b[i];
    return out;
}

void PutInteger(Bytes &out, const BigInt &value)
{
    Bytes magnitude = ToBytesMinimal(value);
    PutU16(out, static_cast<std::uint16_t>(magnitude.size()));
    Append(out, magnitude);
}

BigInt ReadInteger(ByteReader &reader)
{
    std::uint16_t length = reader.U16();
    return FromBytes(reader.Take(length));
}

void ExpectHeader(ByteReader &reader, std::string_view magic)
{
    ByteView found = reader.Take(magic.size());
    if (!std::equal(found.begin(), found.end(), magic.begin()))
    {
        throw DecodeError("bad magic, expected " + std::string(magic));
    }
    std::uint8_t version = reader.U8();
    if (version != kFileVersion)
    {
        throw DecodeError("unsupported file version " + std::to_string(version));
    }
}

G1Point ReadPoint(ByteReader &reader, const Curve &curve)
{
    BigInt x = ReadInteger(reader);
    BigInt y = ReadInteger(reader);
    G1Point point = G1Point::At(x, y);
    if (!curve.IsOnCurve(point))
    {
        throw DecodeError("stored point is not on the curve");
    }
    return point;
}

G1Point RandomGenerator(const Curve &curve, Rng &rng)
{
    while (true)
    {
        G1Point candidate = curve.Multiply(curve.PointFromY(rng.UniformBelow(curve.P())), curve.Cofactor());
        if (!candidate.infinity)
            return candidate;
    }
}

} // namespace

std::string_view ProfileName(Profile profile)
{
    return profile == Profile::kToy ? "toy" : "demo";
}

Profile ParseProfile(std::string_view name)
{
    if (name == "toy")
        return Profile::kToy;
    if (name == "demo")
        return Profile::kDemo;
    throw std::invalid_argument("unknown profile '" + std::string(name) + "' (expected toy or demo)");
}

SecurityConfig SecurityConfig::Toy(std::uint64_t seed)
{
    return SecurityConfig{Profile::kToy, 227, 19, kDefaultMessageBits, seed};
}

SecurityConfig SecurityConfig::Demo(std::uint64_t seed)
{
    return SecurityConfig{Profile::kDemo, ParseBigInt(kDemoP), ParseBigInt(kDemoQ), kDefaultMessageBits, seed};
}

SecurityConfig SecurityConfig::ForProfile(Profile profile, std::uint64_t seed)
{
    return profile == Profile::kToy ? Toy(seed) : Demo(seed);
}

void SecurityConfig::Validate() const
{
    if (p <= 3 || !IsProbablePrime(p))
        throw std::invalid_argument("p is not a prime > 3");
    if (Mod(p, 3) != 2)
        throw std::invalid_argument("p not = 2 mod 3");
    if (q == p)
        throw std::invalid_argument("q must differ from p");
    if (q <= 3 || !IsProbablePrime(q))
        throw std::invalid_argument("q is not prime");
    if (Mod(p + 1, q) != 0)
        throw std::invalid_argument("q does not divide p+1");
    if (messageBits == 0 || messageBits > 256)
        throw std::invalid_argument("message block bits must be in [1, 256]");
}

std::pair<PublicParams, MasterKey> Setup(const SecurityConfig &config)
{
    config.Validate();
    Rng rng(config.seed);
    Curve curve(config.p, config.q);
    G1Point generator = RandomGenerator(curve, rng);
    MasterKey master{rng.NonZeroBelow(curve.Q())};
    G1Point publicKey = curve.Multiply(generator, master.s);
    return {PublicParams{curve, generator, publicKey, config.messageBits}, master};
}

G1Point HashToPoint(const PublicParams &params, std::string_view identity)
{
    if (identity.empty())
    {
        throw std::invalid_argument("identity must be non-empty");
    }
    const Curve &curve = params.curve;
    for (std::uint32_t counter = 0;; ++counter)
    {
        Sha256 hasher;
        hasher.Update(identity);
        if (counter > 0)
        {
            Bytes suffix;
            PutU32(suffix, counter);
            hasher.Update(suffix);
        }
        Sha256::Digest digest = hasher.Finish();
        G1Point point = curve.PointFromY(FromBytes(digest));
        G1Point mapped = curve.Multiply(point, curve.Cofactor());
        if (!mapped.infinity)
            return mapped;
    }
}

Bytes HashGt(const PublicParams &params, const GtElement &g)
{
    return TruncateBits(Sha256Of(GtEncode(params.curve, g)), params.messageBits);
}

BigInt HashToScalar(const PublicParams &params, ByteView sigma, ByteView message)
{
    Sha256::Digest digest = Sha256().Update(sigma).Update(message).Finish();
    return Mod(FromBytes(digest), params.curve.Q() - 1) + 1;
}

Bytes HashSigma(const PublicParams &params, ByteView sigma)
{
    return TruncateBits(Sha256Of(sigma), params.messageBits);
}

PrivateKey Extract(const PublicParams &params, const MasterKey &master, std::string_view identity)
{
    return PrivateKey{std::string(identity), params.curve.Multiply(HashToPoint(params, identity), master.s)};
}

bool IsConsistent(const PublicParams &params, const PrivateKey &key)
{
    if (!params.curve.HasOrderQ(key.d))
        return false;
    return Pairing(params.curve, key.d, params.generator) ==
           Pairing(params.curve, HashToPoint(params, key.identity), params.publicKey);
}

Ciphertext Encrypt(const PublicParams &params, std::string_view identity, ByteView message, Rng &rng)
{
    Bytes sigma = rng.RandomBytes(params.MessageBytes());
    unsigned spare = static_cast<unsigned>(params.MessageBytes() * 8 - params.messageBits);
    if (spare > 0)
        sigma.back() &= static_cast<std::uint8_t>(0xff << spare);
    return EncryptWithSigma(params, identity, message, sigma);
}

Ciphertext EncryptWithSigma(const PublicParams &params, std::string_view identity, ByteView message,
                            ByteView sigma)
{
    if (message.size() > params.MaxPlaintextBytes())
    {
        throw std::invalid_argument("message of " + std::to_string(message.size()) + " bytes exceeds block size " +
                                    std::to_string(params.MaxPlaintextBytes()));
    }
    if (sigma.size() != params.MessageBytes())
    {
        throw std::invalid_argument("sigma must be n bits");
    }
    const Curve &curve = params.curve;
    BigInt r = HashToScalar(params, sigma, message);
    G1Point u = curve.Multiply(params.generator, r);
    GtElement g = GtPow(curve, Pairing(curve, HashToPoint(params, identity), params.publicKey), r);

    Ciphertext out;
    out.u = std::move(u);
    out.v = Xor(sigma, HashGt(params, g), params.MessageBytes());
    out.w = Xor(message, HashSigma(params, sigma), message.size());
    return out;
}

std::optional<Bytes> Decrypt(const PublicParams &params, const PrivateKey &key, const Ciphertext &ciphertext)
{
    const Curve &curve = params.curve;
    if (ciphertext.u.infinity || !curve.IsOnCurve(ciphertext.u))
        return std::nullopt;
    if (ciphertext.v.size() != params.MessageBytes() || ciphertext.w.size() > params.MaxPlaintextBytes())
        return std::nullopt;

    GtElement g = Pairing(curve, key.d, ciphertext.u);
    Bytes sigma = Xor(ciphertext.v, HashGt(params, g), params.MessageBytes());
    Bytes message = Xor(ciphertext.w, HashSigma(params, sigma), ciphertext.w.size());
    BigInt r = HashToScalar(params, sigma, message);
    if (curve.Multiply(params.generator, r) != ciphertext.u)
        return std::nullopt;
    return message;
}

Bytes EncodeCiphertext(const PublicParams &params, const Ciphertext &ciphertext)
{
    Bytes out = params.curve.Encode(ciphertext.u);
    Append(out, ciphertext.v);
    Append(out, ciphertext.w);
    return out;
}

Ciphertext DecodeCiphertext(const PublicParams &params, ByteView bytes)
{
    ByteReader reader(bytes);
    Ciphertext out;
    out.u = params.curve.Decode(reader.Take(params.curve.PointBytes()));
    ByteView v = reader.Take(params.MessageBytes());
    out.v.assign(v.begin(), v.end());
    ByteView w = reader.Rest();
    out.w.assign(w.begin(), w.end());
    return out;
}

Bytes SerializeParams(const PublicParams &params)
{
    Bytes out = ToBytes("IBTP");
    out.push_back(kFileVersion);
    PutInteger(out, params.curve.P());
    PutInteger(out, params.curve.Q());
    PutInteger(out, params.messageBits);
    PutInteger(out, params.generator.x);
    PutInteger(out, params.generator.y);
    PutInteger(out, params.publicKey.x);
    PutInteger(out, params.publicKey.y);
    return out;
}

PublicParams DeserializeParams(ByteView bytes)
{
    ByteReader reader(bytes);
    ExpectHeader(reader, "IBTP");
    BigInt p = ReadInteger(reader);
    BigInt q = ReadInteger(reader);
    BigInt n = ReadInteger(reader);
    SecurityConfig config{Profile::kDemo, p, q, static_cast<unsigned>(n.get_ui()), 0};
    if (n > 256)
        throw DecodeError("message block bits out of range");
    try
    {
        config.Validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw DecodeError(std::string("invalid parameters: ") + e.what());
    }
    Curve curve(p, q);
    G1Point generator = ReadPoint(reader, curve);
    G1Point publicKey = ReadPoint(reader, curve);
    if (!reader.AtEnd())
        throw DecodeError("trailing bytes after parameters");
    if (!curve.HasOrderQ(generator) || !curve.HasOrderQ(publicKey))
        throw DecodeError("P and sP must have order q");
    return PublicParams{curve, generator, publicKey, config.messageBits};
}

Bytes SerializePrivateKey(const PrivateKey &key)
{
    Bytes out = ToBytes("IBTK");
    out.push_back(kFileVersion);
    PutU16(out, static_cast<std::uint16_t>(key.identity.size()));
    Append(out, ToBytes(key.identity));
    PutInteger(out, key.d.x);
    PutInteger(out, key.d.y);
    return out;
}

PrivateKey DeserializePrivateKey(const PublicParams &params, ByteView bytes)
{
    ByteReader reader(bytes);
    ExpectHeader(reader, "IBTK");
    std::uint16_t length = reader.U16();
    ByteView id = reader.Take(length);
    PrivateKey key{std::string(id.begin(), id.end()), ReadPoint(reader, params.curve)};
    if (!reader.AtEnd())
        throw DecodeError("trailing bytes after private key");
    if (key.identity.empty())
        throw DecodeError("private key has an empty identity");
    return key;
}

Bytes SerializeMasterKey(const MasterKey &master)
{
    Bytes out = ToBytes("IBTM");
    out.push_back(kFileVersion);
    PutInteger(out, master.s);
    return out;
}

MasterKey DeserializeMasterKey(const PublicParams &params, ByteView bytes)
{
    ByteReader reader(bytes);
    ExpectHeader(reader, "IBTM");
    MasterKey master{ReadInteger(reader)};
    if (!reader.AtEnd())
        throw DecodeError("trailing bytes after master key");
    if (master.s < 1 || master.s >= params.curve.Q())
        throw DecodeError("master key out of range");
    if (params.curve.Multiply(params.generator, master.s) != params.publicKey)
        throw DecodeError("master key does not match sP");
    return master;
}

namespace basic {

BasicCiphertext Encrypt(const PublicParams &params, std::string_view identity, ByteView message, const BigInt &r)
{
    if (message.size() > params.MaxPlaintextBytes())
        throw std::invalid_argument("message exceeds block size");
    const Curve &curve = params.curve;
    GtElement g = GtPow(curve, Pairing(curve, HashToPoint(params, identity), params.publicKey), r);
    return BasicCiphertext{curve.Multiply(params.generator, r), Xor(message, HashGt(params, g), message.size())};
}

Bytes Decrypt(const PublicParams &params, const PrivateKey &key, const BasicCiphertext &ciphertext)
{
    GtElement g = Pairing(params.curve, key.d, ciphertext.u);
    return Xor(ciphertext.v, HashGt(params, g), ciphertext.v.size());
}

} // namespace basic

} // namespace ibetrust::ibe
