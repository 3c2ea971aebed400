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

#ifndef IBETRUST_ENERGY_HPP_
#define IBETRUST_ENERGY_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ibetrust::energy {

/**
 * Processor and radio constants. Defaults model a 20 mA / 3.6 V processor
 * and a CC2420-class radio.
 */
struct EnergyConstants
{
    double voltage = 3.6;        ///< V
    double current = 0.020;      ///< A
    double bootDelay = 0.059;    ///< s, first-stage secure boot
    double encryptDelay = 0.05;  ///< s
    double sha2Delay = 0.05;     ///< s
    double switchDelay = 0.23;   ///< s, one world transition
    double pairingDelay = 4.05;  ///< s, one Tate pairing
    double encryptPerBit = 22.5e-6; ///< J/bit
    double txPerByte = 1.83e-6;  ///< J/byte
    double rxPerByte = 1.98e-6;  ///< J/byte
    double batteryCapacity = 1000.0; ///< J
    /// Bits billed for the TA encryption when evaluating the closed-form
    /// total; 160 bits makes the per-bit rate agree with the 0.05 s row.
    unsigned taEncryptedBits = 160;

    double Power() const { return voltage * current; }
    double BootEnergy() const;
    double SwitchEnergy() const;
    double Sha2Energy() const;
    double PairingEnergy() const;
    double EncryptEnergyFromDelay() const;

    /// Throws std::invalid_argument for negative values.
    void Validate() const;

    /// Strict JSON loader: unknown keys and negative values are errors.
    static EnergyConstants FromJson(std::string_view text);
    static EnergyConstants LoadFile(const std::string &path);
    std::string ToJson() const;
};

/// E = P * t. Negative inputs throw std::invalid_argument.
double Joules(double powerWatts, double seconds);

/// E_Tx * tx + E_Rx * rx.
double CommEnergy(const EnergyConstants &constants, std::uint64_t txBytes, std::uint64_t rxBytes);

/// boots*E_Boot + switches*E_SW + bits*E_enc + CommEnergy(tx, rx).
double TotalEnergy(const EnergyConstants &constants, std::uint64_t boots, std::uint64_t switches,
                   std::uint64_t encryptedBits, std::uint64_t txBytes, std::uint64_t rxBytes);

inline constexpr unsigned kFramePayloadBytes = 106;
inline constexpr unsigned kFrameTotalBytes = 127;

/// Fractional airtime estimate payload / 106 * 127.
double AirtimeEstimate(double payloadBytes);

enum class Category : std::uint8_t
{
    kBoot,
    kSwitch,
    kEncrypt,
    kPairing,
    kSha2,
    kTx,
    kRx,
};

inline constexpr std::array<Category, 7> kAllCategories = {Category::kBoot,    Category::kSwitch, Category::kEncrypt,
                                                           Category::kPairing, Category::kSha2,   Category::kTx,
                                                           Category::kRx};

std::string_view CategoryName(Category category);
Category ParseCategory(std::string_view name);

/// What protocol activity an energy event belongs to.
enum class Activity : std::uint8_t
{
    kBoot,
    kTrustedAuth,
    kKeyExchange,
};

std::string_view ActivityName(Activity activity);
Activity ParseActivity(std::string_view name);

/// Energy is kept in integer femtojoules so that every sum is exact.
using Femtojoules = std::int64_t;

Femtojoules ToFemtojoules(double joules);
double ToJoules(Femtojoules fj);

struct EnergyEvent
{
    std::uint64_t time;
    Category category;
    Activity activity;
    Femtojoules energy;
    std::uint64_t quantity; ///< bytes, bits, or operation count depending on category
    std::uint32_t exchange; ///< groups events of one TA or AKE run; 0 for none
};

/**
 * Per-node energy accumulation. Totals only grow; the grand total always
 * equals both the sum of events and the sum of category totals.
 */
class EnergyLedger
{
public:
    void Bill(std::uint64_t time, Category category, Activity activity, double joules, std::uint64_t quantity,
              std::uint32_t exchange = 0);
    void Record(const EnergyEvent &event);

    Femtojoules Total() const { return mTotal; }
    Femtojoules CategoryTotal(Category category) const { return mByCategory[static_cast<std::size_t>(category)]; }
    std::uint64_t CategoryQuantity(Category category) const { return mQuantity[static_cast<std::size_t>(category)]; }
    double TotalJoules() const { return ToJoules(mTotal); }

    const std::vector<EnergyEvent> &Events() const { return mEvents; }

private:
    std::vector<EnergyEvent> mEvents;
    std::array<Femtojoules, kAllCategories.size()> mByCategory{};
    std::array<std::uint64_t, kAllCategories.size()> mQuantity{};
    Femtojoules mTotal = 0;
};

} // namespace ibetrust::energy

#endif // IBETRUST_ENERGY_HPP_
