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

#include <gtest/gtest.h>

#include <set>

#include "ibetrust/rng.hpp"
#include "ibetrust/secure_boot.hpp"
#include "ibetrust/sha256.hpp"

using namespace ibetrust;
using namespace ibetrust::boot;

namespace {

std::vector<Bytes> Images(Rng &rng, std::size_t depth, std::size_t size = 128)
{
    std::vector<Bytes> out;
    for (std::size_t i = 0; i < depth; ++i)
        out.push_back(rng.RandomBytes(size));
    return out;
}

} // namespace

// Every tamper pattern over levels 2..4 against the product of integrity
// bits computed here from plain digest comparisons.
TEST(SecureBoot, AllTamperPatternsMatchProduct)
{
    Rng rng(2024);
    std::vector<Bytes> reference = Images(rng, 4);
    for (unsigned mask = 0; mask < 8; ++mask)
    {
        BootChain chain = BootChain::Provision(reference);
        std::vector<int> bits = {1};
        for (unsigned level = 2; level <= 4; ++level)
        {
            bool tampered = (mask >> (level - 2)) & 1;
            if (tampered)
                chain.images[level - 1].bytes[5] ^= 0x40;
            bits.push_back(DigestHex(Sha256Of(chain.images[level - 1].bytes)) ==
                                   DigestHex(Sha256Of(reference[level - 1]))
                               ? 1
                               : 0);
        }
        int product = bits[0] * bits[1] * bits[2] * bits[3];
        EXPECT_EQ(OverallIntegrity(bits), product);

        MeasurementLog log;
        BootOutcome outcome = Boot(chain, &log);
        EXPECT_EQ(std::holds_alternative<BootSuccess>(outcome), product == 1) << "mask " << mask;
        if (product == 0)
        {
            unsigned first = 2;
            while (bits[first - 1] == 1)
                ++first;
            EXPECT_EQ(std::get<Halt>(outcome).failedLevel, first);
            for (unsigned level = first + 1; level <= 4; ++level)
                EXPECT_FALSE(log.Measured(level)) << "level " << level << " measured after a failure";
            EXPECT_TRUE(log.Measured(first));
        }
        else
        {
            EXPECT_EQ(log.Records().size(), 3u);
        }
    }
}

TEST(SecureBoot, TrustValueStableAcrossBoots)
{
    Rng rng(1);
    BootChain chain = BootChain::Provision(Images(rng, 3));
    std::string expected = DigestHex(Sha256Of(chain.images[1].bytes)).substr(kDefaultTrustOffset, 8);
    for (int i = 0; i < 10; ++i)
    {
        BootOutcome outcome = Boot(chain);
        ASSERT_TRUE(std::holds_alternative<BootSuccess>(outcome));
        EXPECT_EQ(std::get<BootSuccess>(outcome).trustValue.Text(), expected);
    }
}

// Seed 1000 is the recorded seed for this property.
TEST(SecureBoot, ThousandImagesThousandTrustValues)
{
    Rng rng(1000);
    std::set<std::string> seen;
    for (int i = 0; i < 1000; ++i)
    {
        BootChain chain = BootChain::Provision(Images(rng, 2, 64));
        seen.insert(std::get<BootSuccess>(Boot(chain)).trustValue.Text());
    }
    EXPECT_EQ(seen.size(), 1000u);
}

TEST(SecureBoot, SingleLevelChainUsesRoot)
{
    Bytes root = ToBytes("root of trust");
    BootChain chain = BootChain::Provision({root});
    auto ok = std::get<BootSuccess>(Boot(chain));
    EXPECT_EQ(ok.trustValue.Text(), Measure(root).substr(24, 8));
}

TEST(SecureBoot, TrustValueFromDigestBounds)
{
    std::string digest = Measure(ToBytes("x"));
    EXPECT_EQ(TrustValueFromDigest(digest, 0).Text(), digest.substr(0, 8));
    EXPECT_EQ(TrustValueFromDigest(digest, 56).Text(), digest.substr(56, 8));
    EXPECT_THROW(TrustValueFromDigest(digest, 57), std::out_of_range);
    EXPECT_THROW(TrustValueFromDigest("abc", 0), std::invalid_argument);
    EXPECT_THROW(TrustValue("ABCDEF01"), std::invalid_argument);
    EXPECT_THROW(TrustValue("abcdef0"), std::invalid_argument);
    EXPECT_NO_THROW(TrustValue("abcdef01"));
}

TEST(SecureBoot, OffsetChangesTrustValue)
{
    Rng rng(4);
    std::vector<Bytes> images = Images(rng, 3);
    auto a = std::get<BootSuccess>(Boot(BootChain::Provision(images, 0))).trustValue;
    auto b = std::get<BootSuccess>(Boot(BootChain::Provision(images, 8))).trustValue;
    EXPECT_NE(a, b);
}

TEST(SecureBoot, StructuralValidation)
{
    Rng rng(6);
    BootChain chain = BootChain::Provision(Images(rng, 3));
    chain.referenceDigests.pop_back();
    EXPECT_THROW(chain.Validate(), ConfigError);
    EXPECT_THROW(VerifyLevel(BootChain::Provision(Images(rng, 2)), 3), ConfigError);
    EXPECT_THROW(BootChain::Provision({}), ConfigError);
}

TEST(SecureBoot, MeasurementLogRender)
{
    Rng rng(8);
    MeasurementLog log;
    Boot(BootChain::Provision(Images(rng, 3)), &log);
    ASSERT_EQ(log.Records().size(), 2u);
    EXPECT_EQ(log.Records()[0].level, 2u);
    EXPECT_LT(log.Records()[0].sequence, log.Records()[1].sequence);
    EXPECT_NE(log.Render().find(log.Records()[1].digest), std::string::npos);
}

TEST(World, AccessOnlyInSecureMode)
{
    WorldState world(ToBytes("secret"));
    EXPECT_TRUE(std::holds_alternative<AccessViolation>(world.Access(SecureAsset::kPrivateKey)));
    EXPECT_TRUE(std::holds_alternative<AccessViolation>(world.Access(SecureAsset::kDecrypt)));
    EXPECT_TRUE(world.SwitchTo(WorldMode::kSecure));
    EXPECT_FALSE(world.SwitchTo(WorldMode::kSecure));
    auto key = world.Access(SecureAsset::kPrivateKey);
    ASSERT_TRUE(std::holds_alternative<Bytes>(key));
    EXPECT_EQ(std::get<Bytes>(key), ToBytes("secret"));
    EXPECT_TRUE(world.SwitchTo(WorldMode::kNormal));
    EXPECT_EQ(world.SwitchCount(), 2u);
    std::size_t denies = 0;
    for (const WorldEvent &e : world.Events())
        if (e.kind == WorldEvent::Kind::kDeny)
            ++denies;
    EXPECT_EQ(denies, 2u);
}
