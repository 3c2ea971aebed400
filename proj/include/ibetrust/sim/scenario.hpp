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

#ifndef IBETRUST_SIM_SCENARIO_HPP_
#define IBETRUST_SIM_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ibetrust/ibe/ibe.hpp"
#include "ibetrust/protocol/frame.hpp"

namespace ibetrust::sim {

/// Every problem found while loading, one per line.
class ScenarioError : public std::runtime_error
{
public:
    explicit ScenarioError(std::vector<std::string> problems);

    const std::vector<std::string> &Problems() const { return mProblems; }

private:
    std::vector<std::string> mProblems;
};

struct TamperSpec
{
    unsigned level = 2;
    std::size_t byteIndex = 0;
};

struct NodeSpec
{
    std::uint16_t id = 0;
    std::vector<std::filesystem::path> images; ///< empty: synthetic images
    unsigned chainDepth = 3;
    std::size_t imageBytes = 256;
    std::optional<TamperSpec> tamper; ///< applied after registration, before deployment
};

enum class AttackKind
{
    kReplay,
    kModify,
    kFakeNode,
    kImpersonate,
};

std::string_view AttackKindName(AttackKind kind);

struct FrameSelector
{
    protocol::FrameKind kind = protocol::FrameKind::kTaRequest;
    std::optional<std::uint16_t> source;
    std::size_t index = 0; ///< replay: n-th captured message; modify: n-th message after arming
};

struct AttackSpec
{
    AttackKind kind = AttackKind::kReplay;
    FrameSelector selector;          ///< replay, modify
    std::vector<std::size_t> flipBits; ///< modify: bit positions in the message payload
    std::uint16_t claimedId = 0;     ///< fake_node, impersonate
    std::uint16_t target = 0;        ///< impersonate
};

enum class Action
{
    kBoot,
    kTrustedAuth,
    kKeyExchange,
    kTerminate,
    kTamper,
    kAttack,
};

std::string_view ActionName(Action action);

struct ScheduledEvent
{
    std::uint64_t time = 0;
    Action action = Action::kBoot;
    std::uint16_t node = 0; ///< ake: initiator
    std::uint16_t peer = 0; ///< ake: responder
    TamperSpec tamper;
    AttackSpec attack;
};

struct ChannelConfig
{
    double lossProbability = 0.0;
    std::uint64_t latency = 1;
    bool adversaryTap = true;
};

struct BaseStationConfig
{
    std::uint64_t masterSeed = 1;
    std::size_t trustOffset = 24;
    bool disableNonceCheck = false;
};

struct Scenario
{
    std::string name;
    ibe::Profile profile = ibe::Profile::kToy;
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> keysDir;
    std::optional<std::filesystem::path> energyConstants;
    BaseStationConfig baseStation;
    ChannelConfig channel;
    std::vector<NodeSpec> nodes;
    std::vector<ScheduledEvent> events;

    const NodeSpec *FindNode(std::uint16_t id) const;
};

/// Relative paths inside the document resolve against baseDir.
Scenario ParseScenario(std::string_view text, const std::filesystem::path &baseDir = {});

/// Throws ScenarioError, including when the file cannot be read.
Scenario LoadScenario(const std::filesystem::path &path);

} // namespace ibetrust::sim

#endif // IBETRUST_SIM_SCENARIO_HPP_
