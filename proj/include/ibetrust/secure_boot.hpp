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

#ifndef IBETRUST_SECURE_BOOT_HPP_
#define IBETRUST_SECURE_BOOT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ibetrust/bytes.hpp"

namespace ibetrust::boot {

/// Raised for chains that violate their structural invariants.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct BootImage
{
    unsigned level = 1; ///< 1-based; level 1 is the root of trust
    Bytes bytes;
    std::string role;   ///< "BL1", "BL2", ...
};

inline constexpr std::size_t kDefaultTrustOffset = 24;
inline constexpr std::size_t kDigestHexChars = 64;
inline constexpr std::size_t kTrustValueChars = 8;

/**
 * Ordered boot images plus the reference digests for levels 2..N, which
 * ship with BL1.
 */
struct BootChain
{
    std::vector<BootImage> images;
    std::vector<std::string> referenceDigests; ///< index 0 holds the digest of level 2
    std::size_t trustOffset = kDefaultTrustOffset;

    /// Builds a chain whose reference digests match the given images.
    static BootChain Provision(std::vector<Bytes> images, std::size_t trustOffset = kDefaultTrustOffset);

    std::size_t Depth() const { return images.size(); }
    void Validate() const;
};

/// 8 lowercase hex characters cut from a boot-time digest.
class TrustValue
{
public:
    /// Throws std::invalid_argument unless text is exactly 8 chars of [0-9a-f].
    explicit TrustValue(std::string text);

    const std::string &Text() const { return mText; }

    friend bool operator==(const TrustValue &, const TrustValue &) = default;
    friend auto operator<=>(const TrustValue &, const TrustValue &) = default;

private:
    std::string mText;
};

/// SHA-256 of the image as 64 lowercase hex characters.
std::string Measure(ByteView image);

/// Throws std::out_of_range when offset + 8 > 64 and std::invalid_argument for malformed digests.
TrustValue TrustValueFromDigest(std::string_view digest, std::size_t offset);

struct MeasurementRecord
{
    std::uint64_t sequence;
    unsigned level;
    std::string digest;
    int bit;
};

/// Collects measurements in the order they happen.
class MeasurementLog
{
public:
    void Record(unsigned level, std::string digest, int bit);
    const std::vector<MeasurementRecord> &Records() const { return mRecords; }
    bool Measured(unsigned level) const;
    /// One line per record: sequence level digest bit.
    std::string Render() const;

private:
    std::vector<MeasurementRecord> mRecords;
};

/// Integrity bit for level k. Level 1 is 1 by assumption. Throws ConfigError
/// for a level with no reference digest.
int VerifyLevel(const BootChain &chain, unsigned level, MeasurementLog *log = nullptr);

struct Halt
{
    unsigned failedLevel;
};

struct BootSuccess
{
    TrustValue trustValue;
    std::string bl2Digest;
};

using BootOutcome = std::variant<BootSuccess, Halt>;

/**
 * Verifies levels in order and stops at the first zero bit; levels after a
 * failure are never measured. On success the trust value is cut from the
 * digest of BL2 at the chain's offset (a single-level chain uses BL1).
 */
BootOutcome Boot(const BootChain &chain, MeasurementLog *log = nullptr);

/// Product of integrity bits.
int OverallIntegrity(const std::vector<int> &bits);

enum class WorldMode
{
    kNormal,
    kSecure,
};

std::string_view WorldModeName(WorldMode mode);

enum class SecureAsset
{
    kPrivateKey,
    kDecrypt,
    kEncrypt,
};

std::string_view SecureAssetName(SecureAsset asset);

struct AccessViolation
{
    SecureAsset asset;
};

struct WorldEvent
{
    enum class Kind
    {
        kSwitch,
        kGrant,
        kDeny,
    };

    Kind kind;
    WorldMode mode; ///< mode after a switch, or the mode in which access was attempted
    std::optional<SecureAsset> asset;
};

/**
 * Two-world execution model. Secure-region assets can only be reached in
 * secure mode; every transition is counted and logged.
 */
class WorldState
{
public:
    WorldState() = default;
    explicit WorldState(Bytes privateKeyBlob)
        : mPrivateKey(std::move(privateKeyBlob))
    {
    }

    WorldMode Mode() const { return mMode; }
    std::uint64_t SwitchCount() const { return mSwitchCount; }
    const std::vector<WorldEvent> &Events() const { return mEvents; }

    /// Returns true when the mode actually changed.
    bool SwitchTo(WorldMode target);

    /// Read returns the key bytes; the crypto capabilities return an empty grant.
    std::variant<Bytes, AccessViolation> Access(SecureAsset asset);

    void InstallPrivateKey(Bytes blob) { mPrivateKey = std::move(blob); }

private:
    WorldMode mMode = WorldMode::kNormal;
    std::uint64_t mSwitchCount = 0;
    Bytes mPrivateKey;
    std::vector<WorldEvent> mEvents;
};

} // namespace ibetrust::boot

#endif // IBETRUST_SECURE_BOOT_HPP_
