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

#include "ibetrust/secure_boot.hpp"

#include <algorithm>
#include <sstream>

#include "ibetrust/sha256.hpp"

namespace ibetrust::boot {

namespace {

bool IsLowerHex(std::string_view text)
{
    return std::all_of(text.begin(), text.end(), [](char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); });
}

} // namespace

BootChain BootChain::Provision(std::vector<Bytes> images, std::size_t trustOffset)
{
    BootChain chain;
    chain.trustOffset = trustOffset;
    for (std::size_t i = 0; i < images.size(); ++i)
    {
        unsigned level = static_cast<unsigned>(i + 1);
        if (level >= 2)
            chain.referenceDigests.push_back(Measure(images[i]));
        chain.images.push_back(BootImage{level, std::move(images[i]), "BL" + std::to_string(level)});
    }
    chain.Validate();
    return chain;
}

void BootChain::Validate() const
{
    if (images.empty())
        throw ConfigError("boot chain has no images");
    for (std::size_t i = 0; i < images.size(); ++i)
    {
        if (images[i].level != i + 1)
            throw ConfigError("boot images must be ordered by level starting at 1");
    }
    if (referenceDigests.size() != images.size() - 1)
        throw ConfigError("boot chain of depth " + std::to_string(images.size()) + " needs " +
                          std::to_string(images.size() - 1) + " reference digests, has " +
                          std::to_string(referenceDigests.size()));
    for (const std::string &digest : referenceDigests)
    {
        if (digest.size() != kDigestHexChars || !IsLowerHex(digest))
            throw ConfigError("reference digest must be 64 lowercase hex characters");
    }
    if (trustOffset + kTrustValueChars > kDigestHexChars)
        throw ConfigError("trust value offset " + std::to_string(trustOffset) + " out of range");
}

TrustValue::TrustValue(std::string text)
    : mText(std::move(text))
{
    if (mText.size() != kTrustValueChars || !IsLowerHex(mText))
    {
        throw std::invalid_argument("trust value must be 8 lowercase hex characters");
    }
}

std::string Measure(ByteView image)
{
    return DigestHex(Sha256Of(image));
}

TrustValue TrustValueFromDigest(std::string_view digest, std::size_t offset)
{
    if (digest.size() != kDigestHexChars || !IsLowerHex(digest))
        throw std::invalid_argument("digest must be 64 lowercase hex characters");
    if (offset + kTrustValueChars > kDigestHexChars)
        throw std::out_of_range("trust value offset " + std::to_string(offset) + " out of range");
    return TrustValue(std::string(digest.substr(offset, kTrustValueChars)));
}

void MeasurementLog::Record(unsigned level, std::string digest, int bit)
{
    mRecords.push_back(MeasurementRecord{mRecords.size(), level, std::move(digest), bit});
}

bool MeasurementLog::Measured(unsigned level) const
{
    return std::any_of(mRecords.begin(), mRecords.end(), [level](const MeasurementRecord &r) { return r.level == level; });
}

std::string MeasurementLog::Render() const
{
    std::ostringstream out;
    for (const MeasurementRecord &r : mRecords)
        out << r.sequence << ' ' << r.level << ' ' << r.digest << ' ' << r.bit << '\n';
    return out.str();
}

int VerifyLevel(const BootChain &chain, unsigned level, MeasurementLog *log)
{
    if (level == 0 || level > chain.Depth())
        throw ConfigError("level " + std::to_string(level) + " outside chain of depth " + std::to_string(chain.Depth()));
    if (level == 1)
        return 1;
    if (chain.referenceDigests.size() < level - 1)
        throw ConfigError("no reference digest for level " + std::to_string(level));

    std::string digest = Measure(chain.images[level - 1].bytes);
    int bit = digest == chain.referenceDigests[level - 2] ? 1 : 0;
    if (log != nullptr)
        log->Record(level, digest, bit);
    return bit;
}

BootOutcome Boot(const BootChain &chain, MeasurementLog *log)
{
    chain.Validate();
    std::vector<int> bits{1};
    std::string bl2Digest;
    for (unsigned level = 2; level <= chain.Depth(); ++level)
    {
        bits.push_back(VerifyLevel(chain, level, log));
        if (OverallIntegrity(bits) == 0)
            return Halt{level};
        if (level == 2)
            bl2Digest = Measure(chain.images[1].bytes);
    }
    if (chain.Depth() == 1)
        bl2Digest = Measure(chain.images[0].bytes);
    return BootSuccess{TrustValueFromDigest(bl2Digest, chain.trustOffset), bl2Digest};
}

int OverallIntegrity(const std::vector<int> &bits)
{
    int product = 1;
    for (int bit : bits)
        product *= bit;
    return product;
}

std::string_view WorldModeName(WorldMode mode)
{
    return mode == WorldMode::kSecure ? "secure" : "normal";
}

std::string_view SecureAssetName(SecureAsset asset)
{
    switch (asset)
    {
    case SecureAsset::kPrivateKey:
        return "private_key";
    case SecureAsset::kDecrypt:
        return "decrypt";
    case SecureAsset::kEncrypt:
        return "encrypt";
    }
    return "unknown";
}

bool WorldState::SwitchTo(WorldMode target)
{
    if (target == mMode)
        return false;
    mMode = target;
    ++mSwitchCount;
    mEvents.push_back(WorldEvent{WorldEvent::Kind::kSwitch, mMode, std::nullopt});
    return true;
}

std::variant<Bytes, AccessViolation> WorldState::Access(SecureAsset asset)
{
    if (mMode != WorldMode::kSecure)
    {
        mEvents.push_back(WorldEvent{WorldEvent::Kind::kDeny, mMode, asset});
        return AccessViolation{asset};
    }
    mEvents.push_back(WorldEvent{WorldEvent::Kind::kGrant, mMode, asset});
    if (asset == SecureAsset::kPrivateKey)
        return mPrivateKey;
    return Bytes{};
}

} // namespace ibetrust::boot
