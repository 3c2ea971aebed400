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

#ifndef IBETRUST_PROTOCOL_BASE_STATION_HPP_
#define IBETRUST_PROTOCOL_BASE_STATION_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ibetrust/ibe/ibe.hpp"
#include "ibetrust/protocol/frame.hpp"
#include "ibetrust/protocol/payload.hpp"
#include "ibetrust/rng.hpp"
#include "ibetrust/secure_boot.hpp"

namespace ibetrust::protocol {

/// What the base station installs into a node during offline provisioning.
struct NodeSecrets
{
    std::shared_ptr<const ibe::PublicParams> params;
    ibe::PrivateKey key;
};

enum class TrustStatus
{
    kRegistered,
    kTrusted,
    kTerminated,
};

std::string_view TrustStatusName(TrustStatus status);

struct TrustRecord
{
    std::uint16_t address = 0;
    std::string identity;
    boot::TrustValue trustValue{"00000000"};
    TrustStatus status = TrustStatus::kRegistered;
    std::optional<std::uint16_t> lastNonce;
    std::set<std::uint16_t> seenNonces;
};

enum class TaRejectReason
{
    kDecryptFailure,
    kMacMismatch,
    kUnknownId,
    kTrustValueMismatch,
    kNonceReplay,
};

std::string_view TaRejectReasonName(TaRejectReason reason);

struct TaAccepted
{
    std::uint16_t address;
    std::uint16_t nonce;
    std::vector<std::uint16_t> trustIds;
    std::vector<Frame> ackFrames;
    std::size_t pairings; ///< pairings spent decrypting and sealing
};

struct TaRejected
{
    TaRejectReason reason;
    std::optional<std::uint16_t> address; ///< known once the request decrypted
    std::size_t pairings;
};

struct RejectEntry
{
    std::uint64_t time;
    std::optional<std::uint16_t> address;
    TaRejectReason reason;
};

struct BaseStationOptions
{
    /// Test-only switch. Turning it off lets replayed requests through.
    bool checkNonces = true;
};

/**
 * The trusted authority: key generation, the trust database, and the
 * trusted-authentication responder.
 */
class BaseStation
{
public:
    BaseStation(ibe::PublicParams params, ibe::MasterKey master, std::uint64_t seed, BaseStationOptions options = {});

    std::shared_ptr<const ibe::PublicParams> Params() const { return mParams; }
    const ibe::PrivateKey &Key() const { return mKey; }
    std::uint16_t Address() const { return kBaseStationAddress; }
    std::string Identity() const { return IdentityForAddress(kBaseStationAddress); }

    /// Offline delivery. Throws std::invalid_argument for a duplicate or reserved address.
    NodeSecrets Provision(std::uint16_t address);
    bool IsProvisioned(std::uint16_t address) const { return mRoster.count(address) != 0; }
    std::size_t RosterSize() const { return mRoster.size(); }

    /// Controlled pre-deployment registration. Re-registration overwrites the stored value.
    void Register(std::uint16_t address, const boot::TrustValue &trustValue);

    std::variant<TaAccepted, TaRejected> HandleTaRequest(std::uint64_t time, ByteView sealed);

    /// Returns false (and changes nothing) for an unknown address.
    bool Terminate(std::uint16_t address);

    /// Sorted addresses whose status is trusted.
    std::vector<std::uint16_t> TrustIdList() const;

    const std::map<std::uint16_t, TrustRecord> &Records() const { return mRecords; }
    const std::vector<RejectEntry> &Rejections() const { return mRejections; }
    const std::vector<std::string> &Warnings() const { return mWarnings; }

private:
    TaRejected Reject(std::uint64_t time, TaRejectReason reason, std::optional<std::uint16_t> address,
                      std::size_t pairings);

    std::shared_ptr<const ibe::PublicParams> mParams;
    ibe::MasterKey mMaster;
    ibe::PrivateKey mKey;
    Rng mRng;
    BaseStationOptions mOptions;
    std::map<std::uint16_t, std::string> mRoster;
    std::map<std::uint16_t, TrustRecord> mRecords;
    std::vector<RejectEntry> mRejections;
    std::vector<std::string> mWarnings;
    std::uint16_t mSequence = 0;
};

} // namespace ibetrust::protocol

#endif // IBETRUST_PROTOCOL_BASE_STATION_HPP_
