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

#include "ibetrust/protocol/base_station.hpp"

#include <stdexcept>

namespace ibetrust::protocol {

std::string_view TrustStatusName(TrustStatus status)
{
    switch (status)
    {
    case TrustStatus::kRegistered:
        return "registered";
    case TrustStatus::kTrusted:
        return "trusted";
    case TrustStatus::kTerminated:
        return "terminated";
    }
    return "unknown";
}

std::string_view TaRejectReasonName(TaRejectReason reason)
{
    switch (reason)
    {
    case TaRejectReason::kDecryptFailure:
        return "decrypt_failure";
    case TaRejectReason::kMacMismatch:
        return "mac_mismatch";
    case TaRejectReason::kUnknownId:
        return "unknown_id";
    case TaRejectReason::kTrustValueMismatch:
        return "trust_value_mismatch";
    case TaRejectReason::kNonceReplay:
        return "nonce_replay";
    }
    return "unknown";
}

BaseStation::BaseStation(ibe::PublicParams params, ibe::MasterKey master, std::uint64_t seed,
                         BaseStationOptions options)
    : mParams(std::make_shared<const ibe::PublicParams>(std::move(params)))
    , mMaster(std::move(master))
    , mKey(ibe::Extract(*mParams, mMaster, IdentityForAddress(kBaseStationAddress)))
    , mRng(seed)
    , mOptions(options)
{
}

NodeSecrets BaseStation::Provision(std::uint16_t address)
{
    if (address == kBaseStationAddress)
        throw std::invalid_argument("address 0 is reserved for the base station");
    if (IsProvisioned(address))
        throw std::invalid_argument("node " + std::to_string(address) + " is already provisioned");
    std::string identity = IdentityForAddress(address);
    mRoster.emplace(address, identity);
    return NodeSecrets{mParams, ibe::Extract(*mParams, mMaster, identity)};
}

void BaseStation::Register(std::uint16_t address, const boot::TrustValue &trustValue)
{
    auto roster = mRoster.find(address);
    if (roster == mRoster.end())
        throw std::invalid_argument("node " + std::to_string(address) + " was never provisioned");
    auto [it, inserted] = mRecords.try_emplace(address);
    TrustRecord &record = it->second;
    record.address = address;
    record.identity = roster->second;
    record.trustValue = trustValue;
    if (inserted)
        record.status = TrustStatus::kRegistered;
}

TaRejected BaseStation::Reject(std::uint64_t time, TaRejectReason reason, std::optional<std::uint16_t> address,
                               std::size_t pairings)
{
    mRejections.push_back(RejectEntry{time, address, reason});
    return TaRejected{reason, address, pairings};
}

std::variant<TaAccepted, TaRejected> BaseStation::HandleTaRequest(std::uint64_t time, ByteView sealed)
{
    OpenResult opened = Open(*mParams, mKey, sealed);
    if (!opened.plaintext)
        return Reject(time, TaRejectReason::kDecryptFailure, std::nullopt, opened.pairings);

    std::optional<TaRequest> request;
    try
    {
        request = DecodeTaRequest(*opened.plaintext);
    }
    catch (const DecodeError &)
    {
    }
    if (!request)
        return Reject(time, TaRejectReason::kMacMismatch, std::nullopt, opened.pairings);

    auto it = mRecords.find(request->address);
    if (it == mRecords.end())
        return Reject(time, TaRejectReason::kUnknownId, request->address, opened.pairings);
    TrustRecord &record = it->second;
    if (record.trustValue != request->trustValue)
        return Reject(time, TaRejectReason::kTrustValueMismatch, request->address, opened.pairings);
    if (mOptions.checkNonces && record.seenNonces.count(request->nonce) != 0)
        return Reject(time, TaRejectReason::kNonceReplay, request->address, opened.pairings);

    record.seenNonces.insert(request->nonce);
    record.lastNonce = request->nonce;
    record.status = TrustStatus::kTrusted;

    TaAccepted accepted;
    accepted.address = request->address;
    accepted.nonce = request->nonce;
    accepted.trustIds = TrustIdList();
    SealedMessage ack = Seal(*mParams, record.identity, EncodeTaAck(TaAck{request->nonce, accepted.trustIds}), mRng);
    accepted.ackFrames = Fragment(ack.bytes, FrameKind::kTaAck, kBaseStationAddress, request->address, mSequence);
    mSequence = static_cast<std::uint16_t>(mSequence + accepted.ackFrames.size());
    accepted.pairings = opened.pairings + ack.blocks;
    return accepted;
}

bool BaseStation::Terminate(std::uint16_t address)
{
    auto it = mRecords.find(address);
    if (it == mRecords.end())
    {
        mWarnings.push_back("terminate: unknown node " + std::to_string(address));
        return false;
    }
    it->second.status = TrustStatus::kTerminated;
    return true;
}

std::vector<std::uint16_t> BaseStation::TrustIdList() const
{
    std::vector<std::uint16_t> ids;
    for (const auto &[address, record] : mRecords)
    {
        if (record.status == TrustStatus::kTrusted)
            ids.push_back(address);
    }
    return ids;
}

} // namespace ibetrust::protocol
