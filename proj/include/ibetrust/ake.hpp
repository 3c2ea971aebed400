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

#ifndef IBETRUST_AKE_HPP_
#define IBETRUST_AKE_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "ibetrust/bytes.hpp"
#include "ibetrust/ibe/ibe.hpp"
#include "ibetrust/rng.hpp"
#include "ibetrust/sha256.hpp"

namespace ibetrust::ake {

using Mac = std::array<std::uint8_t, 4>;

/// First four bytes of SHA-256 over data. Unkeyed; used as the wire MAC.
Mac TruncatedMac(ByteView data);

/**
 * The single message of the one-pass exchange, A -> B.
 *
 * mac covers sender address || nonce || encoded R, the same bytes the
 * payload codec protects, so the message travels as one payload.
 */
struct AkeMessage
{
    std::string senderId;
    std::string receiverId;
    std::uint16_t senderAddress = 0;
    ibe::G1Point r;
    std::uint16_t nonce = 0;
    Mac mac{};
};

Mac ComputeMessageMac(const ibe::PublicParams &params, std::uint16_t senderAddress, std::uint16_t nonce,
                      const ibe::G1Point &r);

struct SessionKey
{
    static constexpr std::size_t kSize = 16;

    std::array<std::uint8_t, kSize> key{};
    /// id_A || id_B || encoded R, the transcript bound into the key.
    Bytes transcript;

    friend bool operator==(const SessionKey &, const SessionKey &) = default;
};

enum class RejectReason
{
    kOffCurve,
    kMacMismatch,
    kWrongReceiver,
};

std::string_view RejectReasonName(RejectReason reason);

struct Reject
{
    RejectReason reason;
};

/// h = SHA-256(encoded R || id_A || id_B) mod (q-1) + 1.
BigInt SessionScalar(const ibe::PublicParams &params, const ibe::G1Point &r, std::string_view idA,
                     std::string_view idB);

/// SHA-256(GT encoding || id_A || id_B || encoded R) truncated to 16 bytes.
/// Throws std::invalid_argument when k is the identity of GT.
SessionKey DeriveKey(const ibe::PublicParams &params, const ibe::GtElement &k, std::string_view idA,
                     std::string_view idB, const ibe::G1Point &r);

struct Initiation
{
    AkeMessage message;
    SessionKey key;
    BigInt ephemeral; ///< the r that was used; exposed for tests
};

/**
 * A's side: R = r*Q_A, K_AB = e((r + h) S_A, Q_B). r is redrawn while
 * r + h = 0 mod q, which would make K_AB the identity.
 */
Initiation Initiate(const ibe::PublicParams &params, const ibe::PrivateKey &senderKey, std::uint16_t senderAddress,
                    std::string_view receiverId, Rng &rng);

/// Test hook: tries the given ephemeral scalars in order and uses the first
/// non-degenerate one. Throws if all are degenerate or out of range.
Initiation InitiateWithScalars(const ibe::PublicParams &params, const ibe::PrivateKey &senderKey,
                               std::uint16_t senderAddress, std::string_view receiverId, std::uint16_t nonce,
                               std::span<const BigInt> candidates);

/// B's side: K_BA = e(R + h Q_A, S_B). No pairing is computed unless the
/// MAC and point checks pass.
std::variant<SessionKey, Reject> Respond(const ibe::PublicParams &params, const ibe::PrivateKey &receiverKey,
                                         const AkeMessage &message);

} // namespace ibetrust::ake

#endif // IBETRUST_AKE_HPP_
