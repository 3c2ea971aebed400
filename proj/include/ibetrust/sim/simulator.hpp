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

#ifndef IBETRUST_SIM_SIMULATOR_HPP_
#define IBETRUST_SIM_SIMULATOR_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ibetrust/energy.hpp"
#include "ibetrust/energy_report.hpp"
#include "ibetrust/sim/scenario.hpp"

namespace ibetrust::sim {

struct SimOptions
{
    std::optional<std::uint64_t> seed;                ///< overrides the scenario seed
    std::optional<energy::EnergyConstants> constants; ///< overrides the scenario constants file
    std::ostream *verbose = nullptr;                  ///< receives each log line as it is produced
};

struct NodeFinal
{
    std::uint16_t address = 0;
    std::string phase;
    std::string trustValue; ///< "-" when none
    std::vector<std::uint16_t> trustIds;
};

struct AttackVerdict
{
    std::size_t event = 0;
    std::uint64_t time = 0;
    std::string kind;
    std::string verdict; ///< blocked, succeeded or no_op
    std::string detail;
};

/// Terminal result of one honest scheduled event.
struct EventOutcome
{
    std::size_t event = 0;
    std::uint64_t time = 0;
    std::string action;
    std::string subject;
    std::string result;
};

/**
 * Everything the report shows. Built only from the event log, so a saved
 * log re-renders to the same bytes.
 */
struct SimSummary
{
    std::string scenario;
    std::string profile;
    std::uint64_t seed = 0;
    energy::EnergyConstants constants;

    std::vector<NodeFinal> nodes;
    std::vector<std::uint16_t> baseStationTrustList;
    std::map<std::uint16_t, std::string> baseStationStatus;

    std::map<std::string, std::size_t> baseStationRejections;
    std::map<std::string, std::size_t> peerRejections;
    std::map<std::string, std::size_t> ackFailures;

    std::vector<AttackVerdict> attacks;
    std::vector<EventOutcome> outcomes;

    std::uint64_t framesSent = 0;
    std::uint64_t bytesSent = 0;
    std::uint64_t framesDropped = 0;
    std::uint64_t reassemblyTimeouts = 0;

    std::vector<energy::NodeLedger> ledgers;

    energy::EnergyReport Energy() const;
    std::string RenderText() const;
    std::string RenderCsv() const;
};

struct SimResult
{
    std::vector<std::string> log;
    SimSummary summary;
};

/// Runs the scenario to completion. Throws ScenarioError for configuration
/// problems found while building the network (unreadable files, bad keys).
SimResult Run(const Scenario &scenario, const SimOptions &options = {});

/// Rebuilds the summary from log lines. Throws DecodeError on malformed input.
SimSummary SummarizeLog(const std::vector<std::string> &lines);

std::vector<std::string> ReadLog(const std::filesystem::path &path);

/// Synthetic boot image for a node and level; stable across runs and seeds.
Bytes SyntheticImage(std::uint16_t address, unsigned level, std::size_t size);

} // namespace ibetrust::sim

#endif // IBETRUST_SIM_SIMULATOR_HPP_
