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

#ifndef IBETRUST_PROTOCOL_NODE_HPP_
#define IBETRUST_PROTOCOL_NODE_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "ibetrust/ake.hpp"
#include "ibetrust/energy.hpp"
#include "ibetrust/protocol/base_station.hpp"
#include "ibetrust/protocol/frame.hpp"
#include "ibetrust/rng.hpp"
#include "ibetrust/secure_boot.hpp"

namespace ibetrust::protocol {

/// Lifecycle: DP -> PDP -> DY -> TA -> TRUSTED, or HALTED on a failed boot,
/// or TERMINATED by the base station. A reboot re-enters DY.
enum class Phase
{
    kNew,
    kDelivered,    ///< DP: secrets installed
    kRegistered,   ///< PDP: trust value known to the base station
    kDeployed,     ///< DY: booted in the field with a fresh trust value
    kAuthenticating, ///< TA: request sent, waiting for the ack
    kTrusted,
    kHalted,
    kTerminated,
};

std::string_view PhaseName(Phase phase);

enum class AckOutcome
{
    kInstalled,
    kNotAwaiting,
    kDecryptFailure,
    kStaleNonce,
};

std::string_view AckOutcomeName(AckOutcome outcome);

enum class PeerRejectReason
{
    kReceiverNotTrusted,
    kNotInTrustList,
    kMacMismatch,
    kOffCurve,
    kReplay,
    kMalformed,
};

std::string_view PeerRejectReasonName(PeerRejectReason reason);

struct PeerReject
{
    PeerRejectReason reason;
};

struct AkeStart
{
    Frame frame;
    ake::SessionKey key;
};

/**
 * One sensor node: boot chain, secure world holding the private key,
 * trustID list, nonce history, and its energy ledger.
 */
class SensorNode
{
public:
    SensorNode(std::uint16_t address, boot::BootChain chain, std::uint64_t seed,
               energy::EnergyConstants constants = {});

    std::uint16_t Address() const { return mAddress; }
    const std::string &Identity() const { return mIdentity; }
    Phase CurrentPhase() const { return mPhase; }
    const std::optional<boot::TrustValue> &CurrentTrustValue() const { return mTrustValue; }
    const std::set<std::uint16_t> &TrustIds() const { return mTrustIds; }
    const energy::EnergyLedger &Ledger() const { return mLedger; }
    const boot::WorldState &World() const { return mWorld; }
    const boot::BootChain &Chain() const { return mChain; }
    const boot::MeasurementLog &Measurements() const { return mMeasurements; }
    std::shared_ptr<const ibe::PublicParams> Params() const { return mParams; }
    std::uint32_t CurrentExchange() const { return mExchange; }

    /// DP: stores the parameters and moves the key into the secure region.
    void InstallSecrets(const NodeSecrets &secrets);

    /// Boot in the controlled environment. Bills nothing.
    boot::BootOutcome ControlledBoot();
    void MarkRegistered();

    /// DY: boot in the field. Bills one boot; halts on any integrity failure.
    boot::BootOutcome DeployBoot(std::uint64_t time);

    /// Builds the encrypted trust report for the base station. Returns no
    /// frames when the node has no fresh trust value (halted).
    std::vector<Frame> StartTrustedAuth(std::uint64_t time);

    /// Bills the received bytes, then decrypts and checks the nonce echo.
    AckOutcome HandleAck(std::uint64_t time, std::span<const Frame> frames);

    /// Requires phase TRUSTED.
    AkeStart InitiateAke(std::uint64_t time, std::uint16_t peerAddress);

    /// Tier 1: sender must be on the trustID list (no pairing otherwise).
    /// Tier 2: the one-pass key derivation.
    std::variant<ake::SessionKey, PeerReject> HandleAke(std::uint64_t time, const Frame &frame);

    void Terminate();

    /// Flips one byte of a boot image in place, modelling a modified image.
    void TamperImage(unsigned level, std::size_t byteIndex = 0);

private:
    ibe::PrivateKey LoadKeyInSecureWorld(std::uint64_t time, energy::Activity activity);
    void EnterSecure(std::uint64_t time, energy::Activity activity);
    void LeaveSecure(std::uint64_t time, energy::Activity activity);
    void Bill(std::uint64_t time, energy::Category category, energy::Activity activity, double joules,
              std::uint64_t quantity);
    std::uint16_t FreshNonce();
    std::uint16_t NextSequence(std::size_t count);

    std::uint16_t mAddress;
    std::string mIdentity;
    boot::BootChain mChain;
    Rng mRng;
    energy::EnergyConstants mConstants;
    Phase mPhase = Phase::kNew;

    std::shared_ptr<const ibe::PublicParams> mParams;
    boot::WorldState mWorld;
    boot::MeasurementLog mMeasurements;
    std::optional<boot::TrustValue> mTrustValue;
    std::set<std::uint16_t> mTrustIds;
    std::set<std::uint16_t> mUsedNonces;
    std::optional<std::uint16_t> mPendingNonce;
    std::set<std::tuple<std::uint16_t, std::uint16_t, Bytes>> mSeenAke;

    energy::EnergyLedger mLedger;
    std::uint32_t mExchange = 0;
    std::uint16_t mSequence = 0;
};

} // namespace ibetrust::protocol

#endif // IBETRUST_PROTOCOL_NODE_HPP_
