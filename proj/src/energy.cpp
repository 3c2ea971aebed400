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

#include "ibetrust/energy.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ibetrust::energy {

namespace {

struct ConstantField
{
    const char *key;
    double EnergyConstants::*member;
};

constexpr ConstantField kFields[] = {
    {"voltage_v", &EnergyConstants::voltage},
    {"current_a", &EnergyConstants::current},
    {"boot_delay_s", &EnergyConstants::bootDelay},
    {"encrypt_delay_s", &EnergyConstants::encryptDelay},
    {"sha2_delay_s", &EnergyConstants::sha2Delay},
    {"switch_delay_s", &EnergyConstants::switchDelay},
    {"pairing_delay_s", &EnergyConstants::pairingDelay},
    {"encrypt_j_per_bit", &EnergyConstants::encryptPerBit},
    {"tx_j_per_byte", &EnergyConstants::txPerByte},
    {"rx_j_per_byte", &EnergyConstants::rxPerByte},
    {"battery_capacity_j", &EnergyConstants::batteryCapacity},
};

constexpr const char *kBitsKey = "ta_encrypted_bits";

} // namespace

double EnergyConstants::BootEnergy() const
{
    return Joules(Power(), bootDelay);
}

double EnergyConstants::SwitchEnergy() const
{
    return Joules(Power(), switchDelay);
}

double EnergyConstants::Sha2Energy() const
{
    return Joules(Power(), sha2Delay);
}

double EnergyConstants::PairingEnergy() const
{
    return Joules(Power(), pairingDelay);
}

double EnergyConstants::EncryptEnergyFromDelay() const
{
    return Joules(Power(), encryptDelay);
}

void EnergyConstants::Validate() const
{
    for (const ConstantField &field : kFields)
    {
        double value = this->*field.member;
        if (!(value >= 0.0) || !std::isfinite(value))
            throw std::invalid_argument(std::string("energy constant ") + field.key + " must be non-negative");
    }
}

EnergyConstants EnergyConstants::FromJson(std::string_view text)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw std::invalid_argument(std::string("energy constants: ") + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("energy constants: top level must be an object");

    EnergyConstants out;
    for (auto it = doc.begin(); it != doc.end(); ++it)
    {
        bool known = false;
        for (const ConstantField &field : kFields)
        {
            if (it.key() == field.key)
            {
                if (!it->is_number())
                    throw std::invalid_argument("energy constants: " + it.key() + " must be a number");
                out.*field.member = it->get<double>();
                known = true;
            }
        }
        if (it.key() == kBitsKey)
        {
            if (!it->is_number_unsigned())
                throw std::invalid_argument(std::string("energy constants: ") + kBitsKey + " must be a non-negative integer");
            out.taEncryptedBits = it->get<unsigned>();
            known = true;
        }
        if (!known)
            throw std::invalid_argument("energy constants: unknown key '" + it.key() + "'");
    }
    out.Validate();
    return out;
}

EnergyConstants EnergyConstants::LoadFile(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open energy constants file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return FromJson(buffer.str());
}

std::string EnergyConstants::ToJson() const
{
    nlohmann::ordered_json doc;
    for (const ConstantField &field : kFields)
        doc[field.key] = this->*field.member;
    doc[kBitsKey] = taEncryptedBits;
    return doc.dump(2);
}

double Joules(double powerWatts, double seconds)
{
    if (powerWatts < 0.0 || seconds < 0.0)
        throw std::invalid_argument("power and time must be non-negative");
    return powerWatts * seconds;
}

double CommEnergy(const EnergyConstants &constants, std::uint64_t txBytes, std::uint64_t rxBytes)
{
    return constants.txPerByte * static_cast<double>(txBytes) + constants.rxPerByte * static_cast<double>(rxBytes);
}

double TotalEnergy(const EnergyConstants &constants, std::uint64_t boots, std::uint64_t switches,
                   std::uint64_t encryptedBits, std::uint64_t txBytes, std::uint64_t rxBytes)
{
    return static_cast<double>(boots) * constants.BootEnergy() +
           static_cast<double>(switches) * constants.SwitchEnergy() +
           static_cast<double>(encryptedBits) * constants.encryptPerBit + CommEnergy(constants, txBytes, rxBytes);
}

double AirtimeEstimate(double payloadBytes)
{
    if (payloadBytes < 0.0)
        throw std::invalid_argument("payload size must be non-negative");
    return payloadBytes / kFramePayloadBytes * kFrameTotalBytes;
}

std::string_view CategoryName(Category category)
{
    switch (category)
    {
    case Category::kBoot:
        return "boot";
    case Category::kSwitch:
        return "switch";
    case Category::kEncrypt:
        return "encrypt";
    case Category::kPairing:
        return "pairing";
    case Category::kSha2:
        return "sha2";
    case Category::kTx:
        return "tx";
    case Category::kRx:
        return "rx";
    }
    return "unknown";
}

Category ParseCategory(std::string_view name)
{
    for (Category c : kAllCategories)
    {
        if (CategoryName(c) == name)
            return c;
    }
    throw std::invalid_argument("unknown energy category '" + std::string(name) + "'");
}

std::string_view ActivityName(Activity activity)
{
    switch (activity)
    {
    case Activity::kBoot:
        return "boot";
    case Activity::kTrustedAuth:
        return "ta";
    case Activity::kKeyExchange:
        return "ake";
    }
    return "unknown";
}

Activity ParseActivity(std::string_view name)
{
    for (Activity a : {Activity::kBoot, Activity::kTrustedAuth, Activity::kKeyExchange})
    {
        if (ActivityName(a) == name)
            return a;
    }
    throw std::invalid_argument("unknown activity '" + std::string(name) + "'");
}

Femtojoules ToFemtojoules(double joules)
{
    return static_cast<Femtojoules>(std::llround(joules * 1e15));
}

double ToJoules(Femtojoules fj)
{
    return static_cast<double>(fj) * 1e-15;
}

void EnergyLedger::Bill(std::uint64_t time, Category category, Activity activity, double joules,
                        std::uint64_t quantity, std::uint32_t exchange)
{
    if (joules < 0.0)
        throw std::invalid_argument("cannot bill negative energy");
    Record(EnergyEvent{time, category, activity, ToFemtojoules(joules), quantity, exchange});
}

void EnergyLedger::Record(const EnergyEvent &event)
{
    if (event.energy < 0)
        throw std::invalid_argument("cannot record negative energy");
    mEvents.push_back(event);
    std::size_t index = static_cast<std::size_t>(event.category);
    mByCategory[index] += event.energy;
    mQuantity[index] += event.quantity;
    mTotal += event.energy;
}

} // namespace ibetrust::energy
