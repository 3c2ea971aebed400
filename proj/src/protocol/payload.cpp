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

#include "ibetrust/protocol/payload.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "ibetrust/protocol/frame.hpp"

namespace ibetrust::protocol {

namespace {

ake::Mac MacOf(ByteView covered)
{
    return ake::TruncatedMac(covered);
}

bool MacMatches(ByteView covered, ByteView mac)
{
    ake::Mac expected = MacOf(covered);
    return std::equal(expected.begin(), expected.end(), mac.begin(), mac.end());
}

} // namespace

Bytes EncodePayload(const IbeTrustPayload &payload)
{
    if (payload.message.size() > kMaxMessageBytes)
    {
        throw std::length_error("payload message of " + std::to_string(payload.message.size()) +
                                " bytes exceeds " + std::to_string(kMaxMessageBytes));
    }
    Bytes out;
    PutU16(out, payload.sender);
    PutU16(out, payload.nonce);
    Append(out, payload.message);
    ake::Mac mac = MacOf(out);
    Append(out, mac);
    return out;
}

std::variant<IbeTrustPayload, MacMismatch> DecodePayload(ByteView bytes)
{
    if (bytes.size() < kPayloadOverheadBytes || bytes.size() > kMaxPayloadBytes)
    {
        throw DecodeError("payload must be 8..106 bytes, got " + std::to_string(bytes.size()));
    }
    ByteView covered = bytes.first(bytes.size() - 4);
    if (!MacMatches(covered, bytes.last(4)))
        return MacMismatch{};

    IbeTrustPayload out;
    out.sender = GetU16(bytes, 0);
    out.nonce = GetU16(bytes, 2);
    out.message.assign(covered.begin() + 4, covered.end());
    return out;
}

Bytes EncodeAkePayload(const ibe::PublicParams &params, const ake::AkeMessage &message)
{
    Bytes out;
    PutU16(out, message.senderAddress);
    PutU16(out, message.nonce);
    Append(out, params.curve.Encode(message.r));
    Append(out, message.mac);
    return out;
}

ake::AkeMessage DecodeAkePayload(const ibe::PublicParams &params, ByteView bytes, std::string receiverId)
{
    if (bytes.size() != params.curve.PointBytes() + kPayloadOverheadBytes)
        throw DecodeError("key-exchange payload has the wrong length");
    ake::AkeMessage out;
    out.senderAddress = GetU16(bytes, 0);
    out.nonce = GetU16(bytes, 2);
    out.senderId = IdentityForAddress(out.senderAddress);
    out.receiverId = std::move(receiverId);
    out.r = params.curve.Decode(bytes.subspan(4, params.curve.PointBytes()));
    ByteView mac = bytes.last(4);
    std::copy(mac.begin(), mac.end(), out.mac.begin());
    return out;
}

std::string IdentityForAddress(std::uint16_t address)
{
    if (address == kBaseStationAddress)
        return "bs";
    char buffer[16];
    std::snprintf(buffer, sizeof buffer, "node-%03u", static_cast<unsigned>(address));
    return buffer;
}

Bytes EncodeTrustIdList(const std::vector<std::uint16_t> &ids)
{
    Bytes out;
    out.reserve(ids.size() * 2);
    for (std::uint16_t id : ids)
        PutU16(out, id);
    return out;
}

std::vector<std::uint16_t> DecodeTrustIdList(ByteView bytes)
{
    if (bytes.size() % 2 != 0)
        throw DecodeError("trust id list has odd length");
    std::vector<std::uint16_t> out;
    for (std::size_t i = 0; i < bytes.size(); i += 2)
        out.push_back(GetU16(bytes, i));
    return out;
}

Bytes EncodeTaRequest(const TaRequest &request)
{
    Bytes out;
    PutU16(out, request.address);
    Append(out, ToBytes(request.trustValue.Text()));
    PutU16(out, request.nonce);
    Append(out, MacOf(out));
    return out;
}

std::optional<TaRequest> DecodeTaRequest(ByteView bytes)
{
    if (bytes.size() != kTaRequestBytes)
        throw DecodeError("trusted-authentication request must be 16 bytes");
    if (!MacMatches(bytes.first(12), bytes.last(4)))
        return std::nullopt;
    TaRequest out;
    out.address = GetU16(bytes, 0);
    try
    {
        out.trustValue = boot::TrustValue(std::string(bytes.begin() + 2, bytes.begin() + 10));
    }
    catch (const std::invalid_argument &)
    {
        return std::nullopt;
    }
    out.nonce = GetU16(bytes, 10);
    return out;
}

Bytes EncodeTaAck(const TaAck &ack)
{
    Bytes out;
    PutU16(out, ack.nonce);
    PutU16(out, static_cast<std::uint16_t>(ack.trustIds.size()));
    Append(out, EncodeTrustIdList(ack.trustIds));
    Append(out, MacOf(out));
    return out;
}

std::optional<TaAck> DecodeTaAck(ByteView bytes)
{
    if (bytes.size() < 8)
        throw DecodeError("acknowledgement too short");
    ByteView covered = bytes.first(bytes.size() - 4);
    if (!MacMatches(covered, bytes.last(4)))
        return std::nullopt;
    TaAck out;
    out.nonce = GetU16(bytes, 0);
    std::uint16_t count = GetU16(bytes, 2);
    if (covered.size() != 4 + 2 * static_cast<std::size_t>(count))
        return std::nullopt;
    out.trustIds = DecodeTrustIdList(covered.subspan(4));
    return out;
}

SealedMessage Seal(const ibe::PublicParams &params, std::string_view identity, ByteView plaintext, Rng &rng)
{
    if (plaintext.size() > 0xffff)
        throw std::length_error("sealed plaintext too long");
    std::size_t block = params.MaxPlaintextBytes();
    if (block == 0)
        throw std::invalid_argument("message block is shorter than one byte");

    SealedMessage out;
    PutU16(out.bytes, static_cast<std::uint16_t>(plaintext.size()));
    for (std::size_t offset = 0; offset < plaintext.size(); offset += block)
    {
        ByteView chunk = plaintext.subspan(offset, std::min(block, plaintext.size() - offset));
        Append(out.bytes, ibe::EncodeCiphertext(params, ibe::Encrypt(params, identity, chunk, rng)));
        ++out.blocks;
    }
    return out;
}

OpenResult Open(const ibe::PublicParams &params, const ibe::PrivateKey &key, ByteView sealed)
{
    OpenResult result;
    std::size_t block = params.MaxPlaintextBytes();
    std::size_t head = params.curve.PointBytes() + params.MessageBytes();
    try
    {
        ByteReader reader(sealed);
        std::size_t remaining = reader.U16();
        Bytes plaintext;
        while (remaining > 0)
        {
            std::size_t chunk = std::min(block, remaining);
            ibe::Ciphertext c = ibe::DecodeCiphertext(params, reader.Take(head + chunk));
            if (!c.u.infinity)
                ++result.pairings;
            std::optional<Bytes> opened = ibe::Decrypt(params, key, c);
            if (!opened)
                return result;
            Append(plaintext, *opened);
            remaining -= chunk;
        }
        if (!reader.AtEnd())
            return result;
        result.plaintext = std::move(plaintext);
    }
    catch (const DecodeError &)
    {
    }
    return result;
}

} // namespace ibetrust::protocol
