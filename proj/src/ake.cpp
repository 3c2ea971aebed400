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

#include "ibetrust/ake.hpp"

#include <stdexcept>

namespace ibetrust::ake {

using ibe::G1Point;
using ibe::GtElement;
using ibe::PublicParams;

namespace {

bool IsDegenerate(const PublicParams &params, const BigInt &r, const BigInt &h)
{
    return Mod(r + h, params.curve.Q()) == 0;
}

Initiation Finish(const PublicParams &params, const ibe::PrivateKey &senderKey, std::uint16_t senderAddress,
                  std::string_view receiverId, std::uint16_t nonce, const BigInt &r, const G1Point &bigR,
                  const BigInt &h)
{
    const ibe::Curve &curve = params.curve;
    G1Point scaledKey = curve.Multiply(senderKey.d, Mod(r + h, curve.Q()));
    GtElement shared = ibe::Pairing(curve, scaledKey, ibe::HashToPoint(params, receiverId));

    Initiation out;
    out.message.senderId = senderKey.identity;
    out.message.receiverId = std::string(receiverId);
    out.message.senderAddress = senderAddress;
    out.message.r = bigR;
    out.message.nonce = nonce;
    out.message.mac = ComputeMessageMac(params, senderAddress, nonce, bigR);
    out.key = DeriveKey(params, shared, senderKey.identity, receiverId, bigR);
    out.ephemeral = r;
    return out;
}

} // namespace

Mac TruncatedMac(ByteView data)
{
    Sha256::Digest digest = Sha256Of(data);
    return Mac{digest[0], digest[1], digest[2], digest[3]};
}

Mac ComputeMessageMac(const PublicParams &params, std::uint16_t senderAddress, std::uint16_t nonce, const G1Point &r)
{
    Bytes covered;
    PutU16(covered, senderAddress);
    PutU16(covered, nonce);
    Append(covered, params.curve.Encode(r));
    return TruncatedMac(covered);
}

std::string_view RejectReasonName(RejectReason reason)
{
    switch (reason)
    {
    case RejectReason::kOffCurve:
        return "off_curve";
    case RejectReason::kMacMismatch:
        return "mac_mismatch";
    case RejectReason::kWrongReceiver:
        return "wrong_receiver";
    }
    return "unknown";
}

BigInt SessionScalar(const PublicParams &params, const G1Point &r, std::string_view idA, std::string_view idB)
{
    Sha256::Digest digest = Sha256().Update(params.curve.Encode(r)).Update(idA).Update(idB).Finish();
    return Mod(FromBytes(digest), params.curve.Q() - 1) + 1;
}

SessionKey DeriveKey(const PublicParams &params, const GtElement &k, std::string_view idA, std::string_view idB,
                     const G1Point &r)
{
    if (ibe::GtIsIdentity(k))
    {
        throw std::invalid_argument("refusing to derive a session key from the GT identity");
    }
    SessionKey out;
    out.transcript = ToBytes(idA);
    Append(out.transcript, ToBytes(idB));
    Append(out.transcript, params.curve.Encode(r));

    Sha256::Digest digest = Sha256().Update(ibe::GtEncode(params.curve, k)).Update(out.transcript).Finish();
    std::copy_n(digest.begin(), SessionKey::kSize, out.key.begin());
    return out;
}

Initiation Initiate(const PublicParams &params, const ibe::PrivateKey &senderKey, std::uint16_t senderAddress,
                    std::string_view receiverId, Rng &rng)
{
    if (receiverId.empty())
    {
        throw std::invalid_argument("receiver identity must be non-empty");
    }
    const ibe::Curve &curve = params.curve;
    G1Point senderPoint = ibe::HashToPoint(params, senderKey.identity);
    std::uint16_t nonce = static_cast<std::uint16_t>(rng.UniformBelow(std::uint64_t{65536}));
    while (true)
    {
        BigInt r = rng.NonZeroBelow(curve.Q());
        G1Point bigR = curve.Multiply(senderPoint, r);
        BigInt h = SessionScalar(params, bigR, senderKey.identity, receiverId);
        if (!IsDegenerate(params, r, h))
        {
            return Finish(params, senderKey, senderAddress, receiverId, nonce, r, bigR, h);
        }
    }
}

Initiation InitiateWithScalars(const PublicParams &params, const ibe::PrivateKey &senderKey,
                               std::uint16_t senderAddress, std::string_view receiverId, std::uint16_t nonce,
                               std::span<const BigInt> candidates)
{
    const ibe::Curve &curve = params.curve;
    G1Point senderPoint = ibe::HashToPoint(params, senderKey.identity);
    for (const BigInt &r : candidates)
    {
        if (r < 1 || r >= curve.Q())
            throw std::invalid_argument("ephemeral scalar outside Z_q*");
        G1Point bigR = curve.Multiply(senderPoint, r);
        BigInt h = SessionScalar(params, bigR, senderKey.identity, receiverId);
        if (!IsDegenerate(params, r, h))
        {
            return Finish(params, senderKey, senderAddress, receiverId, nonce, r, bigR, h);
        }
    }
    throw std::invalid_argument("every candidate ephemeral scalar is degenerate");
}

std::variant<SessionKey, Reject> Respond(const PublicParams &params, const ibe::PrivateKey &receiverKey,
                                         const AkeMessage &message)
{
    const ibe::Curve &curve = params.curve;
    if (message.receiverId != receiverKey.identity)
    {
        return Reject{RejectReason::kWrongReceiver};
    }
    if (message.r.infinity || !curve.IsOnCurve(message.r))
    {
        return Reject{RejectReason::kOffCurve};
    }
    if (ComputeMessageMac(params, message.senderAddress, message.nonce, message.r) != message.mac)
    {
        return Reject{RejectReason::kMacMismatch};
    }
    if (!curve.Multiply(message.r, curve.Q()).infinity)
    {
        return Reject{RejectReason::kOffCurve};
    }

    BigInt h = SessionScalar(params, message.r, message.senderId, receiverKey.identity);
    G1Point combined = curve.Add(message.r, curve.Multiply(ibe::HashToPoint(params, message.senderId), h));
    GtElement shared = ibe::Pairing(curve, combined, receiverKey.d);
    if (ibe::GtIsIdentity(shared))
    {
        return Reject{RejectReason::kOffCurve};
    }
    return DeriveKey(params, shared, message.senderId, receiverKey.identity, message.r);
}

} // namespace ibetrust::ake
