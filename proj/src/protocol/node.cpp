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

#include "ibetrust/protocol/node.hpp"

#include <stdexcept>

namespace ibetrust::protocol {

using energy::Activity;
using energy::Category;

std::string_view PhaseName(Phase phase)
{
    switch (phase)
    {
    case Phase::kNew:
        return "NEW";
    case Phase::kDelivered:
        return "DP";
    case Phase::kRegistered:
        return "PDP";
    case Phase::kDeployed:
        return "DY";
    case Phase::kAuthenticating:
        return "TA";
    case Phase::kTrusted:
        return "TRUSTED";
    case Phase::kHalted:
        return "HALTED";
    case Phase::kTerminated:
        return "TERMINATED";
    }
    return "UNKNOWN";
}

std::string_view AckOutcomeName(AckOutcome outcome)
{
    switch (outcome)
    {
    case AckOutcome::kInstalled:
        return "installed";
    case AckOutcome::kNotAwaiting:
        return "not_awaiting";
    case AckOutcome::kDecryptFailure:
        return "decrypt_failure";
    case AckOutcome::kStaleNonce:
        return "stale_nonce";
    }
    return "unknown";
}

std::string_view PeerRejectReasonName(PeerRejectReason reason)
{
    switch (reason)
    {
    case PeerRejectReason::kReceiverNotTrusted:
        return "receiver_not_trusted";
    case PeerRejectReason::kNotInTrustList:
        return "not_in_trust_list";
    case PeerRejectReason::kMacMismatch:
        return "mac_mismatch";
    case PeerRejectReason::kOffCurve:
        return "off_curve";
    case PeerRejectReason::kReplay:
        return "replay";
    case PeerRejectReason::kMalformed:
        return "malformed";
    }
    return "unknown";
}

SensorNode::SensorNode(std::uint16_t address, boot::BootChain chain, std::uint64_t seed,
                       energy::EnergyConstants constants)
    : mAddress(address)
    , mIdentity(IdentityForAddress(address))
    , mChain(std::move(chain))
    , mRng(seed)
    , mConstants(constants)
{
    if (address == kBaseStationAddress)
        throw std::invalid_argument("address 0 is reserved for the base station");
    mChain.Validate();
}

void SensorNode::InstallSecrets(const NodeSecrets &secrets)
{
    if (secrets.key.identity != mIdentity)
        throw std::invalid_argument("secrets issued for " + secrets.key.identity + ", node is " + mIdentity);
    mParams = secrets.params;
    mWorld.InstallPrivateKey(ibe::SerializePrivateKey(secrets.key));
    mPhase = Phase::kDelivered;
}

boot::BootOutcome SensorNode::ControlledBoot()
{
    boot::BootOutcome outcome = boot::Boot(mChain, &mMeasurements);
    if (const auto *ok = std::get_if<boot::BootSuccess>(&outcome))
        mTrustValue = ok->trustValue;
    return outcome;
}

void SensorNode::MarkRegistered()
{
    if (mPhase != Phase::kDelivered)
        throw std::logic_error("registration requires a provisioned node");
    mPhase = Phase::kRegistered;
}

boot::BootOutcome SensorNode::DeployBoot(std::uint64_t time)
{
    if (mPhase == Phase::kNew || mPhase == Phase::kDelivered)
        throw std::logic_error(mIdentity + " cannot deploy before registration");
    Bill(time, Category::kBoot, Activity::kBoot, mConstants.BootEnergy(), 1);
    mTrustIds.clear();
    mPendingNonce.reset();
    boot::BootOutcome outcome = boot::Boot(mChain, &mMeasurements);
    if (const auto *ok = std::get_if<boot::BootSuccess>(&outcome))
    {
        mTrustValue = ok->trustValue;
        mPhase = Phase::kDeployed;
    }
    else
    {
        mTrustValue.reset();
        mPhase = Phase::kHalted;
    }
    return outcome;
}

std::vector<Frame> SensorNode::StartTrustedAuth(std::uint64_t time)
{
    if (mPhase == Phase::kHalted || !mTrustValue)
        return {};
    if (mPhase != Phase::kDeployed)
        throw std::logic_error(mIdentity + " can only authenticate right after a field boot (phase " +
                               std::string(PhaseName(mPhase)) + ")");
    ++mExchange;
    std::uint16_t nonce = FreshNonce();

    EnterSecure(time, Activity::kTrustedAuth);
    mWorld.Access(boot::SecureAsset::kEncrypt);
    Bytes plaintext = EncodeTaRequest(TaRequest{mAddress, *mTrustValue, nonce});
    Bill(time, Category::kSha2, Activity::kTrustedAuth, mConstants.Sha2Energy(), 1);
    SealedMessage sealed = Seal(*mParams, IdentityForAddress(kBaseStationAddress), plaintext, mRng);
    std::uint64_t bits = plaintext.size() * 8;
    Bill(time, Category::kEncrypt, Activity::kTrustedAuth, static_cast<double>(bits) * mConstants.encryptPerBit, bits);
    Bill(time, Category::kPairing, Activity::kTrustedAuth, static_cast<double>(sealed.blocks) * mConstants.PairingEnergy(),
         sealed.blocks);
    LeaveSecure(time, Activity::kTrustedAuth);

    std::vector<Frame> frames = Fragment(sealed.bytes, FrameKind::kTaRequest, mAddress, kBaseStationAddress, mSequence);
    NextSequence(frames.size());
    std::size_t wire = WireBytes(frames);
    Bill(time, Category::kTx, Activity::kTrustedAuth, static_cast<double>(wire) * mConstants.txPerByte, wire);

    mPendingNonce = nonce;
    mPhase = Phase::kAuthenticating;
    return frames;
}

AckOutcome SensorNode::HandleAck(std::uint64_t time, std::span<const Frame> frames)
{
    std::size_t wire = WireBytes(frames);
    Bill(time, Category::kRx, Activity::kTrustedAuth, static_cast<double>(wire) * mConstants.rxPerByte, wire);
    if (mPhase != Phase::kAuthenticating || !mPendingNonce)
        return AckOutcome::kNotAwaiting;

    Bytes sealed;
    try
    {
        sealed = Reassemble(frames);
    }
    catch (const ReassemblyError &)
    {
        return AckOutcome::kDecryptFailure;
    }

    ibe::PrivateKey key = LoadKeyInSecureWorld(time, Activity::kTrustedAuth);
    mWorld.Access(boot::SecureAsset::kDecrypt);
    OpenResult opened = Open(*mParams, key, sealed);
    Bill(time, Category::kPairing, Activity::kTrustedAuth,
         static_cast<double>(opened.pairings) * mConstants.PairingEnergy(), opened.pairings);
    LeaveSecure(time, Activity::kTrustedAuth);

    if (!opened.plaintext)
        return AckOutcome::kDecryptFailure;
    std::optional<TaAck> ack;
    try
    {
        ack = DecodeTaAck(*opened.plaintext);
    }
    catch (const DecodeError &)
    {
    }
    if (!ack)
        return AckOutcome::kDecryptFailure;
    if (ack->nonce != *mPendingNonce)
        return AckOutcome::kStaleNonce;

    mTrustIds = std::set<std::uint16_t>(ack->trustIds.begin(), ack->trustIds.end());
    mPendingNonce.reset();
    mPhase = Phase::kTrusted;
    return AckOutcome::kInstalled;
}

AkeStart SensorNode::InitiateAke(std::uint64_t time, std::uint16_t peerAddress)
{
    if (mPhase != Phase::kTrusted)
        throw std::logic_error(mIdentity + " must be trusted to start a key exchange");
    ++mExchange;
    ibe::PrivateKey key = LoadKeyInSecureWorld(time, Activity::kKeyExchange);
    ake::Initiation init = ake::Initiate(*mParams, key, mAddress, IdentityForAddress(peerAddress), mRng);
    Bill(time, Category::kPairing, Activity::kKeyExchange, mConstants.PairingEnergy(), 1);
    LeaveSecure(time, Activity::kKeyExchange);

    Frame frame;
    frame.header = FrameHeader{FrameKind::kAke, FrameHeader::kFirstFragment, peerAddress, mAddress, NextSequence(1)};
    frame.payload = EncodeAkePayload(*mParams, init.message);
    Bill(time, Category::kTx, Activity::kKeyExchange, static_cast<double>(frame.WireSize()) * mConstants.txPerByte,
         frame.WireSize());
    return AkeStart{std::move(frame), std::move(init.key)};
}

std::variant<ake::SessionKey, PeerReject> SensorNode::HandleAke(std::uint64_t time, const Frame &frame)
{
    ++mExchange;
    Bill(time, Category::kRx, Activity::kKeyExchange, static_cast<double>(frame.WireSize()) * mConstants.rxPerByte,
         frame.WireSize());
    if (mPhase != Phase::kTrusted)
        return PeerReject{PeerRejectReason::kReceiverNotTrusted};

    if (frame.payload.size() < kPayloadOverheadBytes)
        return PeerReject{PeerRejectReason::kMalformed};
    std::uint16_t sender = GetU16(frame.payload, 0);
    if (mTrustIds.count(sender) == 0)
        return PeerReject{PeerRejectReason::kNotInTrustList};

    ake::AkeMessage message;
    try
    {
        message = DecodeAkePayload(*mParams, frame.payload, mIdentity);
    }
    catch (const DecodeError &)
    {
        return PeerReject{PeerRejectReason::kOffCurve};
    }
    auto seen = std::make_tuple(message.senderAddress, message.nonce, mParams->curve.Encode(message.r));
    if (mSeenAke.count(seen) != 0)
        return PeerReject{PeerRejectReason::kReplay};

    if (ake::ComputeMessageMac(*mParams, message.senderAddress, message.nonce, message.r) != message.mac)
        return PeerReject{PeerRejectReason::kMacMismatch};

    ibe::PrivateKey key = LoadKeyInSecureWorld(time, Activity::kKeyExchange);
    std::uint64_t before = ibe::PairingCount();
    auto result = ake::Respond(*mParams, key, message);
    std::uint64_t pairings = ibe::PairingCount() - before;
    Bill(time, Category::kPairing, Activity::kKeyExchange, static_cast<double>(pairings) * mConstants.PairingEnergy(),
         pairings);
    LeaveSecure(time, Activity::kKeyExchange);

    if (const auto *reject = std::get_if<ake::Reject>(&result))
    {
        return PeerReject{reject->reason == ake::RejectReason::kMacMismatch ? PeerRejectReason::kMacMismatch
                                                                            : PeerRejectReason::kOffCurve};
    }
    mSeenAke.insert(std::move(seen));
    return std::get<ake::SessionKey>(std::move(result));
}

void SensorNode::Terminate()
{
    mTrustIds.clear();
    mPendingNonce.reset();
    mPhase = Phase::kTerminated;
}

void SensorNode::TamperImage(unsigned level, std::size_t byteIndex)
{
    if (level == 0 || level > mChain.Depth())
        throw std::out_of_range("no boot image at level " + std::to_string(level));
    Bytes &image = mChain.images[level - 1].bytes;
    if (image.empty())
        image.push_back(0x01);
    else
        image[byteIndex % image.size()] ^= 0x01;
}

ibe::PrivateKey SensorNode::LoadKeyInSecureWorld(std::uint64_t time, Activity activity)
{
    EnterSecure(time, activity);
    auto blob = mWorld.Access(boot::SecureAsset::kPrivateKey);
    return ibe::DeserializePrivateKey(*mParams, std::get<Bytes>(blob));
}

void SensorNode::EnterSecure(std::uint64_t time, Activity activity)
{
    if (mWorld.SwitchTo(boot::WorldMode::kSecure))
        Bill(time, Category::kSwitch, activity, mConstants.SwitchEnergy(), 1);
}

void SensorNode::LeaveSecure(std::uint64_t time, Activity activity)
{
    if (mWorld.SwitchTo(boot::WorldMode::kNormal))
        Bill(time, Category::kSwitch, activity, mConstants.SwitchEnergy(), 1);
}

void SensorNode::Bill(std::uint64_t time, Category category, Activity activity, double joules,
                      std::uint64_t quantity)
{
    std::uint32_t exchange = activity == Activity::kBoot ? 0 : mExchange;
    mLedger.Bill(time, category, activity, joules, quantity, exchange);
}

std::uint16_t SensorNode::FreshNonce()
{
    if (mUsedNonces.size() >= 65536)
        throw std::runtime_error(mIdentity + " exhausted its nonce space");
    while (true)
    {
        auto nonce = static_cast<std::uint16_t>(mRng.UniformBelow(std::uint64_t{65536}));
        if (mUsedNonces.insert(nonce).second)
            return nonce;
    }
}

std::uint16_t SensorNode::NextSequence(std::size_t count)
{
    std::uint16_t first = mSequence;
    mSequence = static_cast<std::uint16_t>(mSequence + count);
    return first;
}

} // namespace ibetrust::protocol
