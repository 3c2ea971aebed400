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

#ifndef IBETRUST_IBE_IBE_HPP_
#define IBETRUST_IBE_IBE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "ibetrust/bigint.hpp"
#include "ibetrust/bytes.hpp"
#include "ibetrust/ibe/curve.hpp"
#include "ibetrust/ibe/pairing.hpp"
#include "ibetrust/rng.hpp"

namespace ibetrust::ibe {

enum class Profile
{
    kToy,  ///< p = 227, q = 19. Small enough for exhaustive checks.
    kDemo, ///< 256-bit p, 160-bit q. 64-byte points.
};

std::string_view ProfileName(Profile profile);
Profile ParseProfile(std::string_view name);

inline constexpr unsigned kDefaultMessageBits = 128;

struct SecurityConfig
{
    Profile profile = Profile::kToy;
    BigInt p;
    BigInt q;
    unsigned messageBits = kDefaultMessageBits;
    std::uint64_t seed = 0;

    static SecurityConfig Toy(std::uint64_t seed);
    static SecurityConfig Demo(std::uint64_t seed);
    static SecurityConfig ForProfile(Profile profile, std::uint64_t seed);

    /// Throws std::invalid_argument naming the first violated constraint.
    void Validate() const;
};

/**
 * Public system parameters. P and sP have order q; cofactor * q = p + 1.
 */
struct PublicParams
{
    Curve curve;
    G1Point generator;
    G1Point publicKey; ///< sP
    unsigned messageBits = kDefaultMessageBits;

    std::size_t MessageBytes() const { return (messageBits + 7) / 8; }
    /// Longest plaintext one ciphertext block can carry.
    std::size_t MaxPlaintextBytes() const { return messageBits / 8; }

    friend bool operator==(const PublicParams &, const PublicParams &) = default;
};

/// Names of the hash constructions bound into the parameters.
inline constexpr std::string_view kH1Name = "H1:sha256-maptopoint-ctr32";
inline constexpr std::string_view kH2Name = "H2:sha256(gt)-trunc-n";
inline constexpr std::string_view kH3Name = "H3:sha256(sigma|m)-mod(q-1)+1";
inline constexpr std::string_view kH4Name = "H4:sha256(sigma)-trunc-n";

struct MasterKey
{
    BigInt s;
};

struct PrivateKey
{
    std::string identity;
    G1Point d;

    friend bool operator==(const PrivateKey &, const PrivateKey &) = default;
};

struct Ciphertext
{
    G1Point u;
    Bytes v;
    Bytes w;

    friend bool operator==(const Ciphertext &, const Ciphertext &) = default;
};

std::pair<PublicParams, MasterKey> Setup(const SecurityConfig &config);

/// H1. Throws std::invalid_argument for an empty identity.
G1Point HashToPoint(const PublicParams &params, std::string_view identity);
/// H2: canonical GT encoding hashed and truncated to n bits.
Bytes HashGt(const PublicParams &params, const GtElement &g);
/// H3: scalar in [1, q-1].
BigInt HashToScalar(const PublicParams &params, ByteView sigma, ByteView message);
/// H4: sigma hashed and truncated to n bits.
Bytes HashSigma(const PublicParams &params, ByteView sigma);

PrivateKey Extract(const PublicParams &params, const MasterKey &master, std::string_view identity);

/// Checks e(d, P) = e(H1(id), sP), which needs no secret.
bool IsConsistent(const PublicParams &params, const PrivateKey &key);

/// FullIdent encryption of a single block (|message| <= n/8 bytes).
Ciphertext Encrypt(const PublicParams &params, std::string_view identity, ByteView message, Rng &rng);

/// Same as Encrypt with caller-chosen sigma (n bits); deterministic.
Ciphertext EncryptWithSigma(const PublicParams &params, std::string_view identity, ByteView message,
                            ByteView sigma);

/// Returns std::nullopt (reject) when U is malformed or the re-encryption check fails.
std::optional<Bytes> Decrypt(const PublicParams &params, const PrivateKey &key, const Ciphertext &ciphertext);

/// U || V || W.
Bytes EncodeCiphertext(const PublicParams &params, const Ciphertext &ciphertext);
/// Parses U || V || W; W takes the remaining bytes.
Ciphertext DecodeCiphertext(const PublicParams &params, ByteView bytes);

/**
 * Key files. Every integer is written as u16 length || big-endian magnitude.
 *
 *   params:  "IBTP" u8(version=1) p q n P.x P.y sP.x sP.y
 *   private: "IBTK" u8(version=1) u16(len) identity d.x d.y
 *   master:  "IBTM" u8(version=1) s
 */
Bytes SerializeParams(const PublicParams &params);
PublicParams DeserializeParams(ByteView bytes);
Bytes SerializePrivateKey(const PrivateKey &key);
PrivateKey DeserializePrivateKey(const PublicParams &params, ByteView bytes);
Bytes SerializeMasterKey(const MasterKey &master);
MasterKey DeserializeMasterKey(const PublicParams &params, ByteView bytes);

/**
 * BasicIdent, the CPA-only stepping stone to FullIdent: U = rP,
 * V = m xor H2(e(Q_ID, sP)^r). Kept for property tests of the pairing
 * structure; the protocol never uses it.
 */
namespace basic {

struct BasicCiphertext
{
    G1Point u;
    Bytes v;
};

BasicCiphertext Encrypt(const PublicParams &params, std::string_view identity, ByteView message, const BigInt &r);
Bytes Decrypt(const PublicParams &params, const PrivateKey &key, const BasicCiphertext &ciphertext);

} // namespace basic

} // namespace ibetrust::ibe

#endif // IBETRUST_IBE_IBE_HPP_
