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

#include <vector>

#include "ibetrust/ake.hpp"
#include "ibetrust/ibe/ibe.hpp"
#include "ibetrust/ibe/pairing.hpp"
#include "ibetrust/rng.hpp"

using namespace ibetrust;
using namespace ibetrust::ibe;

namespace {

struct Keys
{
    PublicParams params;
    MasterKey master;
};

Keys MakeKeys(Profile profile)
{
    auto [p, m] = Setup(SecurityConfig::ForProfile(profile, 77));
    return Keys{p, m};
}

const Keys &Toy()
{
    static const Keys k = MakeKeys(Profile::kToy);
    return k;
}

const Keys &Demo()
{
    static const Keys k = MakeKeys(Profile::kDemo);
    return k;
}

} // namespace

TEST(Ake, ToyHonestRunsAgree)
{
    const Keys &k = Toy();
    Rng rng(100);
    for (int i = 0; i < 100; ++i)
    {
        std::string a = "node-" + std::to_string(1 + rng.UniformBelow(50));
        std::string b = "node-" + std::to_string(51 + rng.UniformBelow(50));
        PrivateKey ka = Extract(k.params, k.master, a);
        PrivateKey kb = Extract(k.params, k.master, b);
        ake::Initiation init = ake::Initiate(k.params, ka, 1, b, rng);
        auto resp = ake::Respond(k.params, kb, init.message);
        ASSERT_TRUE(std::holds_alternative<ake::SessionKey>(resp));
        EXPECT_EQ(std::get<ake::SessionKey>(resp), init.key);
    }
}

TEST(Ake, DemoHonestRunsAgree)
{
    const Keys &k = Demo();
    Rng rng(101);
    PrivateKey ka = Extract(k.params, k.master, "node-001");
    PrivateKey kb = Extract(k.params, k.master, "node-002");
    for (int i = 0; i < 20; ++i)
    {
        ake::Initiation init = ake::Initiate(k.params, ka, 1, "node-002", rng);
        auto resp = ake::Respond(k.params, kb, init.message);
        ASSERT_TRUE(std::holds_alternative<ake::SessionKey>(resp));
        EXPECT_EQ(std::get<ake::SessionKey>(resp).key, init.key.key);
    }
}

TEST(Ake, GtIdentityHoldsDirectly)
{
    for (const Keys *k : {&Toy(), &Demo()})
    {
        const Curve &c = k->params.curve;
        Rng rng(5);
        PrivateKey sa = Extract(k->params, k->master, "node-001");
        PrivateKey sb = Extract(k->params, k->master, "node-002");
        G1Point qa = HashToPoint(k->params, "node-001");
        G1Point qb = HashToPoint(k->params, "node-002");
        for (int i = 0; i < 10; ++i)
        {
            BigInt r = rng.NonZeroBelow(c.Q());
            G1Point bigR = c.Multiply(qa, r);
            BigInt h = ake::SessionScalar(k->params, bigR, "node-001", "node-002");
            GtElement lhs = Pairing(c, c.Multiply(sa.d, r + h), qb);
            GtElement rhs = Pairing(c, c.Add(bigR, c.Multiply(qa, h)), sb.d);
            EXPECT_EQ(lhs, rhs);
        }
    }
}

TEST(Ake, KeyDependsOnTranscript)
{
    const Keys &k = Demo();
    PrivateKey ka = Extract(k.params, k.master, "node-001");
    std::vector<BigInt> r = {BigInt(12345)};
    ake::Initiation toB = ake::InitiateWithScalars(k.params, ka, 1, "node-002", 7, r);
    ake::Initiation toC = ake::InitiateWithScalars(k.params, ka, 1, "node-003", 7, r);
    EXPECT_NE(toB.key.key, toC.key.key);
    EXPECT_EQ(toB.message.r, toC.message.r);
    EXPECT_EQ(ake::InitiateWithScalars(k.params, ka, 1, "node-002", 7, r).key, toB.key);
}

TEST(Ake, DegenerateScalarIsSkipped)
{
    const Keys &k = Toy();
    const Curve &c = k.params.curve;
    PrivateKey ka = Extract(k.params, k.master, "node-001");
    G1Point qa = HashToPoint(k.params, "node-001");
    // With q = 19 some receiver has an r where r + h = 0 mod q.
    for (int peer = 2; peer < 200; ++peer)
    {
        std::string receiver = "node-" + std::to_string(peer);
        std::optional<BigInt> degenerate;
        std::optional<BigInt> fine;
        for (int r = 1; r < 19; ++r)
        {
            BigInt h = ake::SessionScalar(k.params, c.Multiply(qa, r), "node-001", receiver);
            if (Mod(r + h, c.Q()) == 0)
                degenerate = r;
            else if (!fine)
                fine = r;
        }
        if (!degenerate || !fine)
            continue;
        std::vector<BigInt> both = {*degenerate, *fine};
        EXPECT_EQ(ake::InitiateWithScalars(k.params, ka, 1, receiver, 0, both).ephemeral, *fine);
        std::vector<BigInt> only = {*degenerate};
        EXPECT_THROW(ake::InitiateWithScalars(k.params, ka, 1, receiver, 0, only), std::invalid_argument);
        return;
    }
    FAIL() << "no degenerate scalar found";
}

TEST(Ake, ScalarRangeChecked)
{
    const Keys &k = Toy();
    PrivateKey ka = Extract(k.params, k.master, "node-001");
    std::vector<BigInt> zero = {BigInt(0)};
    EXPECT_THROW(ake::InitiateWithScalars(k.params, ka, 1, "node-002", 0, zero), std::invalid_argument);
    std::vector<BigInt> big = {BigInt(19)};
    EXPECT_THROW(ake::InitiateWithScalars(k.params, ka, 1, "node-002", 0, big), std::invalid_argument);
}

TEST(Ake, DeriveKeyRejectsIdentity)
{
    EXPECT_THROW(ake::DeriveKey(Toy().params, GtIdentity(), "a", "b", Toy().params.generator), std::invalid_argument);
}

TEST(Ake, RejectReasons)
{
    const Keys &k = Demo();
    Rng rng(9);
    PrivateKey ka = Extract(k.params, k.master, "node-001");
    PrivateKey kb = Extract(k.params, k.master, "node-002");
    PrivateKey kc = Extract(k.params, k.master, "node-003");
    ake::Initiation init = ake::Initiate(k.params, ka, 1, "node-002", rng);

    auto wrong = ake::Respond(k.params, kc, init.message);
    ASSERT_TRUE(std::holds_alternative<ake::Reject>(wrong));
    EXPECT_EQ(std::get<ake::Reject>(wrong).reason, ake::RejectReason::kWrongReceiver);

    ake::AkeMessage offCurve = init.message;
    offCurve.r.y += 1;
    auto r1 = ake::Respond(k.params, kb, offCurve);
    ASSERT_TRUE(std::holds_alternative<ake::Reject>(r1));
    EXPECT_EQ(std::get<ake::Reject>(r1).reason, ake::RejectReason::kOffCurve);

    ake::AkeMessage badMac = init.message;
    badMac.nonce ^= 1;
    auto r2 = ake::Respond(k.params, kb, badMac);
    ASSERT_TRUE(std::holds_alternative<ake::Reject>(r2));
    EXPECT_EQ(std::get<ake::Reject>(r2).reason, ake::RejectReason::kMacMismatch);
    EXPECT_EQ(ake::RejectReasonName(ake::RejectReason::kMacMismatch), "mac_mismatch");
}

TEST(Ake, NoPairingBeforeChecksPass)
{
    const Keys &k = Demo();
    Rng rng(10);
    PrivateKey ka = Extract(k.params, k.master, "node-001");
    PrivateKey kb = Extract(k.params, k.master, "node-002");
    ake::Initiation init = ake::Initiate(k.params, ka, 1, "node-002", rng);
    ake::AkeMessage badMac = init.message;
    badMac.mac[0] ^= 1;
    std::uint64_t before = PairingCount();
    ake::Respond(k.params, kb, badMac);
    EXPECT_EQ(PairingCount(), before);
    ake::Respond(k.params, kb, init.message);
    EXPECT_EQ(PairingCount(), before + 1);
}

TEST(Ake, ImpersonatorWithoutKeyDerivesDifferentKey)
{
    const Keys &k = Demo();
    Rng rng(12);
    // Attacker claims node-001 but holds node-009's key.
    PrivateKey fake = Extract(k.params, k.master, "node-009");
    fake.identity = "node-001";
    PrivateKey kb = Extract(k.params, k.master, "node-002");
    ake::Initiation init = ake::Initiate(k.params, fake, 1, "node-002", rng);
    auto resp = ake::Respond(k.params, kb, init.message);
    ASSERT_TRUE(std::holds_alternative<ake::SessionKey>(resp));
    EXPECT_NE(std::get<ake::SessionKey>(resp).key, init.key.key);
}
