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

#ifndef IBETRUST_PROTOCOL_PAYLOAD_HPP_
#define IBETRUST_PROTOCOL_PAYLOAD_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ibetrust/ake.hpp"
#include "ibetrust/bytes.hpp"
#include "ibetrust/ibe/ibe.hpp"
#include "ibetrust/rng.hpp"
#include "ibetrust/secure_boot.hpp"

namespace ibetrust::protocol {

inline constexpr std::size_t kPayloadOverheadBytes = 8;
inline constexpr std::size_t kMaxMessageBytes = 98; // 106 - 2 - 2 - 4

/**
 * IBE-Trust payload: sender(2) || nonce(2) || message || mac(4), where mac
 * is the first four bytes of SHA-256(sender || nonce || message).
 */
struct IbeTrustPayload
{
    std::uint16_t sender = 0;
    std::uint16_t nonce = 0;
    Bytes message;

    friend bool operator==(const IbeTrustPayload &, const IbeTrustPayload &) = default;
};

struct MacMismatch
{
};

/// Throws std::length_error for messages over 98 bytes.
Bytes EncodePayload(const IbeTrustPayload &payload);
/// Throws DecodeError for payloads shorter than 8 or longer than 106 bytes.
std::variant<IbeTrustPayload, MacMismatch> DecodePayload(ByteView bytes);

/// Wire form of the key-exchange message, a payload whose message is R.
Bytes EncodeAkePayload(const ibe::PublicParams &params, const ake::AkeMessage &message);
/// Rebuilds the message fields carried on the wire; the identities come
/// from the address registry. Throws DecodeError when R is not a point.
ake::AkeMessage DecodeAkePayload(const ibe::PublicParams &params, ByteView bytes, std::string receiverId);

/// Wire identities are 2-byte addresses; address 0 is the base station.
inline constexpr std::uint16_t kBaseStationAddress = 0;
std::string IdentityForAddress(std::uint16_t address);

/// 2 bytes per id, big-endian, in the given order.
Bytes EncodeTrustIdList(const std::vector<std::uint16_t> &ids);
std::vector<std::uint16_t> DecodeTrustIdList(ByteView bytes);

/// Plaintext of a trusted-authentication request:
/// id(2) || Hm'(8 ASCII hex) || nonce(2) || mac(4) = 16 bytes.
struct TaRequest
{
    std::uint16_t address = 0;
    boot::TrustValue trustValue{"00000000"};
    std::uint16_t nonce = 0;

    friend bool operator==(const TaRequest &, const TaRequest &) = default;
};

inline constexpr std::size_t kTaRequestBytes = 16;

Bytes EncodeTaRequest(const TaRequest &request);
/// nullopt on MAC mismatch or malformed trust value; DecodeError on bad length.
std::optional<TaRequest> DecodeTaRequest(ByteView bytes);

/// Plaintext of the acknowledgement: nonce(2) || count(2) || ids(2 each) || mac(4).
struct TaAck
{
    std::uint16_t nonce = 0;
    std::vector<std::uint16_t> trustIds;

    friend bool operator==(const TaAck &, const TaAck &) = default;
};

Bytes EncodeTaAck(const TaAck &ack);
std::optional<TaAck> DecodeTaAck(ByteView bytes);

/**
 * Multi-block IBE envelope: u16 plaintext length, then one FullIdent
 * ciphertext (U || V || W) per n/8-byte block of plaintext.
 */
struct SealedMessage
{
    Bytes bytes;
    std::size_t blocks = 0;
};

SealedMessage Seal(const ibe::PublicParams &params, std::string_view identity, ByteView plaintext, Rng &rng);

struct OpenResult
{
    std::optional<Bytes> plaintext; ///< nullopt when any block fails to decrypt or the layout is wrong
    std::size_t pairings = 0;       ///< pairings actually evaluated
};

OpenResult Open(const ibe::PublicParams &params, const ibe::PrivateKey &key, ByteView sealed);

} // namespace ibetrust::protocol

#endif // IBETRUST_PROTOCOL_PAYLOAD_HPP_
