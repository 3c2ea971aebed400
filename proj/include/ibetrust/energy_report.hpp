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

#ifndef IBETRUST_ENERGY_REPORT_HPP_
#define IBETRUST_ENERGY_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ibetrust/energy.hpp"

namespace ibetrust::energy {

struct NodeLedger
{
    std::uint16_t address;
    EnergyLedger ledger;
};

struct ProcessRow
{
    std::string process;
    double delaySeconds;
    double energyJoules;     ///< power * delay
    std::string referenceValue;  ///< as printed in the reference table
    std::uint64_t simulatedCount;
    double simulatedJoules;
};

struct CommRow
{
    std::string process;
    std::string direction;
    double ratePerByte;
    std::uint64_t simulatedBytes;
    std::uint64_t referenceBytes;
    double simulatedJoules;
    double referenceJoules;
};

struct ComparisonRow
{
    std::string scheme;
    std::string authentication;
    std::string energyMillijoules;
    std::string storage;
    std::string sessionKey;
};

/// One trusted-authentication run: the boot before it plus its own events.
struct TaExchangeSummary
{
    std::uint16_t address = 0;
    std::uint32_t exchange = 0;
    std::uint64_t txBytes = 0;
    std::uint64_t rxBytes = 0;
    std::uint64_t switches = 0;
    std::uint64_t encryptedBits = 0;
    std::uint64_t pairings = 0;
    double ledgerJoules = 0.0; ///< everything billed, including one boot and every world switch
};

struct EnergyReport
{
    EnergyConstants constants;
    std::vector<ProcessRow> processes;
    std::vector<CommRow> communication;
    std::vector<ComparisonRow> comparison;

    std::optional<TaExchangeSummary> taExchange;
    /// Closed form: 1 boot + 1 switch + taEncryptedBits + simulated TA bytes.
    double taClosedFormJoules = 0.0;
    double batteryFraction = 0.0;

    std::size_t trustListIds = 0;
    std::size_t trustListPayloadBytes = 0;
    double trustListAirtimeEstimate = 0.0;
    std::size_t trustListFragmentedBytes = 0;

    std::vector<NodeLedger> nodes;

    std::string RenderText() const;
    std::string RenderCsv() const;
};

/// Builds the tables from per-node ledgers after a run; trustListIds is the
/// size of the final trusted set.
EnergyReport BuildReport(const std::vector<NodeLedger> &nodes, const EnergyConstants &constants,
                         std::size_t trustListIds);

/// Picks the earliest TA run that both sent a request and received an ack.
std::optional<TaExchangeSummary> FirstCompletedTaExchange(const std::vector<NodeLedger> &nodes,
                                                          const EnergyConstants &constants);

} // namespace ibetrust::energy

#endif // IBETRUST_ENERGY_REPORT_HPP_
