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

#include <cmath>

#include "ibetrust/energy.hpp"
#include "ibetrust/energy_report.hpp"
#include "ibetrust/rng.hpp"

using namespace ibetrust;
using namespace ibetrust::energy;

TEST(Energy, ProcessConstants)
{
    EnergyConstants c;
    EXPECT_NEAR(c.Power(), 0.072, 1e-15);
    EXPECT_NEAR(c.BootEnergy(), 0.072 * 0.059, 1e-15);
    EXPECT_NEAR(c.EncryptEnergyFromDelay(), 0.0036, 1e-15);
    EXPECT_NEAR(c.SwitchEnergy(), 0.01656, 1e-15);
    EXPECT_NEAR(c.PairingEnergy(), 0.2916, 1e-15);
    EXPECT_NEAR(c.Sha2Energy(), 0.0036, 1e-15);
    // 160 bits at the per-bit rate equals the encryption delay row.
    EXPECT_NEAR(c.taEncryptedBits * c.encryptPerBit, c.EncryptEnergyFromDelay(), 1e-12);
}

TEST(Energy, JoulesRejectsNegative)
{
    EXPECT_DOUBLE_EQ(Joules(2.0, 3.0), 6.0);
    EXPECT_THROW(Joules(-1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(Joules(1.0, -1.0), std::invalid_argument);
}

TEST(Energy, CommunicationExamples)
{
    EnergyConstants c;
    EXPECT_NEAR(CommEnergy(c, 319, 0), 319 * 1.83e-6, 1e-15);
    EXPECT_NEAR(CommEnergy(c, 0, 480), 480 * 1.98e-6, 1e-15);
    EXPECT_NEAR(CommEnergy(c, 85, 0), 155.55e-6, 1e-12);
    EXPECT_DOUBLE_EQ(CommEnergy(c, 0, 0), 0.0);
}

TEST(Energy, TotalClosedForm)
{
    EnergyConstants c;
    double expected = 0.072 * 0.059 + 0.072 * 0.23 + 160 * 22.5e-6 + 319 * 1.83e-6 + 480 * 1.98e-6;
    EXPECT_NEAR(TotalEnergy(c, 1, 1, 160, 319, 480), expected, 1e-12);
    EXPECT_NEAR(TotalEnergy(c, 0, 0, 0, 0, 0), 0.0, 0.0);
    EXPECT_NEAR(TotalEnergy(c, 2, 0, 0, 0, 0), 2 * c.BootEnergy(), 1e-15);
}

TEST(Energy, Airtime)
{
    EXPECT_DOUBLE_EQ(AirtimeEstimate(400), 479.24528301886795);
    EXPECT_NEAR(AirtimeEstimate(400), 479.25, 0.005);
    EXPECT_DOUBLE_EQ(AirtimeEstimate(106), 127.0);
    EXPECT_THROW(AirtimeEstimate(-1), std::invalid_argument);
}

TEST(Energy, ConstantsJson)
{
    EnergyConstants c = EnergyConstants::FromJson(EnergyConstants().ToJson());
    EXPECT_DOUBLE_EQ(c.switchDelay, 0.23);
    EXPECT_EQ(c.taEncryptedBits, 160u);
    EnergyConstants partial = EnergyConstants::FromJson(R"({"voltage_v": 3.0})");
    EXPECT_DOUBLE_EQ(partial.voltage, 3.0);
    EXPECT_DOUBLE_EQ(partial.current, 0.02);
    EXPECT_THROW(EnergyConstants::FromJson(R"({"voltage": 3.0})"), std::invalid_argument);
    EXPECT_THROW(EnergyConstants::FromJson(R"({"voltage_v": -3.0})"), std::invalid_argument);
    EXPECT_THROW(EnergyConstants::FromJson("{"), std::invalid_argument);
    EnergyConstants file = EnergyConstants::LoadFile(IBETRUST_DATA_DIR "/energy_constants.json");
    EXPECT_DOUBLE_EQ(file.Power(), EnergyConstants().Power());
}

TEST(Energy, NameRoundTrips)
{
    for (Category c : kAllCategories)
        EXPECT_EQ(ParseCategory(CategoryName(c)), c);
    for (Activity a : {Activity::kBoot, Activity::kTrustedAuth, Activity::kKeyExchange})
        EXPECT_EQ(ParseActivity(ActivityName(a)), a);
    EXPECT_THROW(ParseCategory("bogus"), std::invalid_argument);
}

// Random event streams: the grand total equals the sum of events and the
// sum of categories, exactly, and never decreases.
TEST(Ledger, Conservation)
{
    Rng rng(55);
    EnergyConstants c;
    for (int round = 0; round < 20; ++round)
    {
        EnergyLedger ledger;
        Femtojoules previous = 0;
        for (int i = 0; i < 500; ++i)
        {
            Category cat = kAllCategories[rng.UniformBelow(kAllCategories.size())];
            double j = rng.UniformUnit() * 0.3;
            ledger.Bill(i, cat, Activity::kTrustedAuth, j, 1 + rng.UniformBelow(100));
            EXPECT_GE(ledger.Total(), previous);
            previous = ledger.Total();
        }
        Femtojoules byEvents = 0;
        for (const EnergyEvent &e : ledger.Events())
            byEvents += e.energy;
        Femtojoules byCategory = 0;
        for (Category cat : kAllCategories)
            byCategory += ledger.CategoryTotal(cat);
        EXPECT_EQ(ledger.Total(), byEvents);
        EXPECT_EQ(ledger.Total(), byCategory);
    }
}

TEST(Ledger, RejectsNegative)
{
    EnergyLedger ledger;
    EXPECT_THROW(ledger.Bill(0, Category::kTx, Activity::kBoot, -1.0, 1), std::invalid_argument);
    EXPECT_EQ(ledger.Total(), 0);
    EXPECT_EQ(ToFemtojoules(1.5e-3), 1500000000000);
}

TEST(Report, SizingRows)
{
    EnergyReport r = BuildReport({}, EnergyConstants(), 200);
    EXPECT_EQ(r.trustListPayloadBytes, 400u);
    EXPECT_NEAR(r.trustListAirtimeEstimate, 479.25, 0.005);
    EXPECT_EQ(r.trustListFragmentedBytes, 484u);
    EXPECT_FALSE(r.taExchange.has_value());
    std::string text = r.RenderText();
    EXPECT_NE(text.find("479.25"), std::string::npos);
    EXPECT_NE(text.find("484"), std::string::npos);
}

TEST(Report, TaExchangeFromLedger)
{
    EnergyConstants c;
    NodeLedger node{1, {}};
    node.ledger.Bill(1, Category::kBoot, Activity::kBoot, c.BootEnergy(), 1, 0);
    node.ledger.Bill(2, Category::kSwitch, Activity::kTrustedAuth, c.SwitchEnergy(), 1, 1);
    node.ledger.Bill(2, Category::kEncrypt, Activity::kTrustedAuth, 128 * c.encryptPerBit, 128, 1);
    node.ledger.Bill(2, Category::kTx, Activity::kTrustedAuth, 119 * c.txPerByte, 119, 1);
    node.ledger.Bill(3, Category::kRx, Activity::kTrustedAuth, 113 * c.rxPerByte, 113, 1);
    EnergyReport r = BuildReport({node}, c, 3);
    ASSERT_TRUE(r.taExchange.has_value());
    EXPECT_EQ(r.taExchange->txBytes, 119u);
    EXPECT_EQ(r.taExchange->rxBytes, 113u);
    EXPECT_NEAR(r.taClosedFormJoules, TotalEnergy(c, 1, 1, 160, 119, 113), 1e-12);
    EXPECT_NEAR(r.batteryFraction, r.taClosedFormJoules / 1000.0, 1e-15);
    EXPECT_NEAR(r.taExchange->ledgerJoules,
                c.BootEnergy() + c.SwitchEnergy() + 128 * c.encryptPerBit + 119 * c.txPerByte + 113 * c.rxPerByte,
                1e-12);
}

TEST(Report, IncompleteExchangeIgnored)
{
    EnergyConstants c;
    NodeLedger node{1, {}};
    node.ledger.Bill(2, Category::kTx, Activity::kTrustedAuth, 119 * c.txPerByte, 119, 1);
    EXPECT_FALSE(FirstCompletedTaExchange({node}, c).has_value());
}
