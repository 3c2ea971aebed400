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

#include "ibetrust/sim/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ibetrust/secure_boot.hpp"

namespace ibetrust::sim {

using nlohmann::json;

namespace {

std::string JoinProblems(const std::vector<std::string> &problems)
{
    std::string out = "invalid scenario:";
    for (const std::string &p : problems)
        out += "\n  " + p;
    return out;
}

/// Collects problems instead of stopping at the first one.
class Checker
{
public:
    void Problem(const std::string &path, const std::string &message) { mProblems.push_back(path + ": " + message); }
    const std::vector<std::string> &Problems() const { return mProblems; }

    bool RequireObject(const json &value, const std::string &path)
    {
        if (value.is_object())
            return true;
        Problem(path, "expected an object");
        return false;
    }

    void AllowKeys(const json &object, const std::string &path, std::initializer_list<std::string_view> keys)
    {
        for (const auto &item : object.items())
        {
            if (std::find(keys.begin(), keys.end(), item.key()) == keys.end())
                Problem(Join(path, item.key()), "unknown key");
        }
    }

    std::optional<std::uint64_t> Unsigned(const json &object, const std::string &path, std::string_view key,
                                          bool required, std::uint64_t max = std::numeric_limits<std::uint64_t>::max())
    {
        auto it = object.find(key);
        if (it == object.end())
        {
            if (required)
                Problem(Join(path, key), "missing required key");
            return std::nullopt;
        }
        if (!it->is_number_unsigned())
        {
            Problem(Join(path, key), "expected a non-negative integer");
            return std::nullopt;
        }
        std::uint64_t v = it->get<std::uint64_t>();
        if (v > max)
        {
            Problem(Join(path, key), "must be at most " + std::to_string(max));
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::string> String(const json &object, const std::string &path, std::string_view key,
                                      bool required)
    {
        auto it = object.find(key);
        if (it == object.end())
        {
            if (required)
                Problem(Join(path, key), "missing required key");
            return std::nullopt;
        }
        if (!it->is_string())
        {
            Problem(Join(path, key), "expected a string");
            return std::nullopt;
        }
        return it->get<std::string>();
    }

    std::optional<bool> Bool(const json &object, const std::string &path, std::string_view key)
    {
        auto it = object.find(key);
        if (it == object.end())
            return std::nullopt;
        if (!it->is_boolean())
        {
            Problem(Join(path, key), "expected true or false");
            return std::nullopt;
        }
        return it->get<bool>();
    }

    std::optional<double> Number(const json &object, const std::string &path, std::string_view key)
    {
        auto it = object.find(key);
        if (it == object.end())
            return std::nullopt;
        if (!it->is_number())
        {
            Problem(Join(path, key), "expected a number");
            return std::nullopt;
        }
        return it->get<double>();
    }

    static std::string Join(const std::string &path, std::string_view key)
    {
        return path.empty() ? std::string(key) : path + "." + std::string(key);
    }

private:
    std::vector<std::string> mProblems;
};

std::filesystem::path Resolve(const std::filesystem::path &baseDir, const std::string &value)
{
    std::filesystem::path p(value);
    return p.is_absolute() || baseDir.empty() ? p : baseDir / p;
}

std::optional<protocol::FrameKind> FrameKindFrom(const std::string &name)
{
    try
    {
        return protocol::ParseFrameKind(name);
    }
    catch (const std::invalid_argument &)
    {
        return std::nullopt;
    }
}

void ParseSelector(Checker &check, const json &object, const std::string &path, FrameSelector &out)
{
    if (!check.RequireObject(object, path))
        return;
    check.AllowKeys(object, path, {"kind", "source", "index"});
    if (auto kind = check.String(object, path, "kind", true))
    {
        auto parsed = FrameKindFrom(*kind);
        if (parsed)
            out.kind = *parsed;
        else
            check.Problem(Checker::Join(path, "kind"), "unknown frame kind '" + *kind + "'");
    }
    if (auto source = check.Unsigned(object, path, "source", false, 0xffff))
        out.source = static_cast<std::uint16_t>(*source);
    if (auto index = check.Unsigned(object, path, "index", false))
        out.index = *index;
}

void ParseFlipBits(Checker &check, const json &object, const std::string &path, AttackSpec &out)
{
    auto bits = object.find("flip_bits");
    std::string bitsPath = Checker::Join(path, "flip_bits");
    if (bits == object.end())
    {
        check.Problem(bitsPath, "missing required key");
        return;
    }
    if (!bits->is_array() || bits->empty())
    {
        check.Problem(bitsPath, "expected a non-empty array of bit positions");
        return;
    }
    for (std::size_t i = 0; i < bits->size(); ++i)
    {
        const json &b = (*bits)[i];
        if (!b.is_number_unsigned())
            check.Problem(bitsPath + "[" + std::to_string(i) + "]", "expected a non-negative integer");
        else
            out.flipBits.push_back(b.get<std::size_t>());
    }
}

void ParseAttack(Checker &check, const json &object, const std::string &path, AttackSpec &out)
{
    if (!check.RequireObject(object, path))
        return;
    auto kind = check.String(object, path, "kind", true);
    if (!kind)
        return;
    if (*kind == "replay" || *kind == "modify")
    {
        out.kind = *kind == "replay" ? AttackKind::kReplay : AttackKind::kModify;
        if (out.kind == AttackKind::kReplay)
            check.AllowKeys(object, path, {"kind", "frame"});
        else
            check.AllowKeys(object, path, {"kind", "frame", "flip_bits"});
        auto frame = object.find("frame");
        if (frame == object.end())
            check.Problem(Checker::Join(path, "frame"), "missing required key");
        else
            ParseSelector(check, *frame, Checker::Join(path, "frame"), out.selector);
        if (out.kind == AttackKind::kModify)
            ParseFlipBits(check, object, path, out);
    }
    else if (*kind == "fake_node")
    {
        out.kind = AttackKind::kFakeNode;
        check.AllowKeys(object, path, {"kind", "claimed_id"});
        if (auto id = check.Unsigned(object, path, "claimed_id", true, 0xffff))
        {
            if (*id == 0)
                check.Problem(Checker::Join(path, "claimed_id"), "address 0 is the base station");
            out.claimedId = static_cast<std::uint16_t>(*id);
        }
    }
    else if (*kind == "impersonate")
    {
        out.kind = AttackKind::kImpersonate;
        check.AllowKeys(object, path, {"kind", "claimed_id", "target"});
        if (auto id = check.Unsigned(object, path, "claimed_id", true, 0xffff))
            out.claimedId = static_cast<std::uint16_t>(*id);
        if (auto target = check.Unsigned(object, path, "target", true, 0xffff))
            out.target = static_cast<std::uint16_t>(*target);
    }
    else
    {
        check.Problem(Checker::Join(path, "kind"), "unknown attack kind '" + *kind + "'");
    }
}

std::string LineAndColumn(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i)
    {
        if (text[i] == '\n')
        {
            ++line;
            column = 1;
        }
        else
        {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

void ParseNode(Checker &check, const json &n, const std::string &path, const std::filesystem::path &baseDir,
               std::set<std::uint16_t> &declared, NodeSpec &spec)
{
    check.AllowKeys(n, path, {"id", "images", "chain_depth", "image_bytes", "tamper"});
    if (auto id = check.Unsigned(n, path, "id", true, 0xffff))
    {
        if (*id == 0)
            check.Problem(path + ".id", "address 0 is the base station");
        else if (!declared.insert(static_cast<std::uint16_t>(*id)).second)
            check.Problem(path + ".id", "duplicate node id " + std::to_string(*id));
        spec.id = static_cast<std::uint16_t>(*id);
    }
    if (auto images = n.find("images"); images != n.end())
    {
        if (!images->is_array() || images->empty())
        {
            check.Problem(path + ".images", "expected a non-empty array of file paths");
        }
        else
        {
            for (std::size_t k = 0; k < images->size(); ++k)
            {
                std::string item = path + ".images[" + std::to_string(k) + "]";
                if (!(*images)[k].is_string())
                {
                    check.Problem(item, "expected a string");
                    continue;
                }
                std::filesystem::path file = Resolve(baseDir, (*images)[k].get<std::string>());
                if (!std::filesystem::is_regular_file(file))
                    check.Problem(item, "cannot read '" + file.string() + "'");
                spec.images.push_back(file);
            }
            spec.chainDepth = static_cast<unsigned>(images->size());
        }
    }
    if (auto depth = check.Unsigned(n, path, "chain_depth", false, 16))
    {
        if (*depth == 0)
            check.Problem(path + ".chain_depth", "must be at least 1");
        else if (!spec.images.empty() && *depth != spec.images.size())
            check.Problem(path + ".chain_depth", "does not match the number of images");
        else
            spec.chainDepth = static_cast<unsigned>(*depth);
    }
    if (auto bytes = check.Unsigned(n, path, "image_bytes", false, 1u << 20))
    {
        if (*bytes == 0)
            check.Problem(path + ".image_bytes", "must be positive");
        else
            spec.imageBytes = *bytes;
    }
    if (auto tamper = n.find("tamper"); tamper != n.end() && check.RequireObject(*tamper, path + ".tamper"))
    {
        std::string tpath = path + ".tamper";
        check.AllowKeys(*tamper, tpath, {"level", "byte"});
        TamperSpec t;
        t.level = static_cast<unsigned>(check.Unsigned(*tamper, tpath, "level", true, 16).value_or(2));
        t.byteIndex = check.Unsigned(*tamper, tpath, "byte", false).value_or(0);
        if (t.level == 0 || t.level > spec.chainDepth)
            check.Problem(tpath + ".level", "outside the boot chain");
        spec.tamper = t;
    }
}

} // namespace

ScenarioError::ScenarioError(std::vector<std::string> problems)
    : std::runtime_error(JoinProblems(problems))
    , mProblems(std::move(problems))
{
}

std::string_view AttackKindName(AttackKind kind)
{
    switch (kind)
    {
    case AttackKind::kReplay:
        return "replay";
    case AttackKind::kModify:
        return "modify";
    case AttackKind::kFakeNode:
        return "fake_node";
    case AttackKind::kImpersonate:
        return "impersonate";
    }
    return "unknown";
}

std::string_view ActionName(Action action)
{
    switch (action)
    {
    case Action::kBoot:
        return "boot";
    case Action::kTrustedAuth:
        return "ta";
    case Action::kKeyExchange:
        return "ake";
    case Action::kTerminate:
        return "terminate";
    case Action::kTamper:
        return "tamper";
    case Action::kAttack:
        return "attack";
    }
    return "unknown";
}

const NodeSpec *Scenario::FindNode(std::uint16_t id) const
{
    for (const NodeSpec &n : nodes)
    {
        if (n.id == id)
            return &n;
    }
    return nullptr;
}

Scenario ParseScenario(std::string_view text, const std::filesystem::path &baseDir)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ScenarioError({"syntax error at " + LineAndColumn(text, e.byte) + ": " + e.what()});
    }

    Checker check;
    Scenario s;
    if (!check.RequireObject(doc, "(document)"))
        throw ScenarioError(check.Problems());
    check.AllowKeys(doc, "", {"name", "profile", "seed", "keys_dir", "energy_constants", "base_station", "channel",
                              "nodes", "events"});

    s.name = check.String(doc, "", "name", true).value_or("");
    if (auto profile = check.String(doc, "", "profile", true))
    {
        try
        {
            s.profile = ibe::ParseProfile(*profile);
        }
        catch (const std::invalid_argument &)
        {
            check.Problem("profile", "expected toy or demo, got '" + *profile + "'");
        }
    }
    s.seed = check.Unsigned(doc, "", "seed", false).value_or(0);
    if (auto dir = check.String(doc, "", "keys_dir", false))
        s.keysDir = Resolve(baseDir, *dir);
    if (auto file = check.String(doc, "", "energy_constants", false))
        s.energyConstants = Resolve(baseDir, *file);

    if (auto bs = doc.find("base_station"); bs != doc.end() && check.RequireObject(*bs, "base_station"))
    {
        check.AllowKeys(*bs, "base_station", {"master_seed", "trust_offset", "disable_nonce_check"});
        s.baseStation.masterSeed = check.Unsigned(*bs, "base_station", "master_seed", false).value_or(1);
        s.baseStation.trustOffset = check.Unsigned(*bs, "base_station", "trust_offset", false,
                                                   boot::kDigestHexChars - boot::kTrustValueChars)
                                        .value_or(boot::kDefaultTrustOffset);
        s.baseStation.disableNonceCheck = check.Bool(*bs, "base_station", "disable_nonce_check").value_or(false);
    }

    if (auto ch = doc.find("channel"); ch != doc.end() && check.RequireObject(*ch, "channel"))
    {
        check.AllowKeys(*ch, "channel", {"loss_probability", "latency", "adversary_tap"});
        if (auto loss = check.Number(*ch, "channel", "loss_probability"))
        {
            if (*loss < 0.0 || *loss > 1.0)
                check.Problem("channel.loss_probability", "must be within [0, 1]");
            else
                s.channel.lossProbability = *loss;
        }
        if (auto latency = check.Unsigned(*ch, "channel", "latency", false))
        {
            if (*latency == 0)
                check.Problem("channel.latency", "must be positive");
            else
                s.channel.latency = *latency;
        }
        s.channel.adversaryTap = check.Bool(*ch, "channel", "adversary_tap").value_or(true);
    }

    std::set<std::uint16_t> declared;
    auto nodes = doc.find("nodes");
    if (nodes == doc.end())
    {
        check.Problem("nodes", "missing required key");
    }
    else if (!nodes->is_array())
    {
        check.Problem("nodes", "expected an array");
    }
    else
    {
        for (std::size_t i = 0; i < nodes->size(); ++i)
        {
            std::string path = "nodes[" + std::to_string(i) + "]";
            if (!check.RequireObject((*nodes)[i], path))
                continue;
            NodeSpec spec;
            ParseNode(check, (*nodes)[i], path, baseDir, declared, spec);
            s.nodes.push_back(std::move(spec));
        }
    }

    auto requireNode = [&](const std::string &path, std::uint16_t id) {
        if (!declared.count(id))
            check.Problem(path, "references undeclared node " + std::to_string(id));
    };

    auto events = doc.find("events");
    if (events != doc.end() && !events->is_array())
    {
        check.Problem("events", "expected an array");
    }
    else if (events != doc.end())
    {
        std::uint64_t lastTime = 0;
        for (std::size_t i = 0; i < events->size(); ++i)
        {
            const json &e = (*events)[i];
            std::string path = "events[" + std::to_string(i) + "]";
            if (!check.RequireObject(e, path))
                continue;
            ScheduledEvent ev;
            if (auto time = check.Unsigned(e, path, "time", true))
            {
                if (*time < lastTime)
                    check.Problem(path + ".time",
                                  "timestamp " + std::to_string(*time) + " precedes " + std::to_string(lastTime));
                lastTime = std::max(lastTime, *time);
                ev.time = *time;
            }
            auto action = check.String(e, path, "action", true);
            if (!action)
                continue;
            auto nodeField = [&](std::string_view key) -> std::uint16_t {
                auto v = check.Unsigned(e, path, key, true, 0xffff);
                if (!v)
                    return 0;
                requireNode(Checker::Join(path, key), static_cast<std::uint16_t>(*v));
                return static_cast<std::uint16_t>(*v);
            };
            if (*action == "boot" || *action == "ta" || *action == "terminate")
            {
                check.AllowKeys(e, path, {"time", "action", "node"});
                ev.action = *action == "boot" ? Action::kBoot
                            : *action == "ta" ? Action::kTrustedAuth
                                              : Action::kTerminate;
                ev.node = nodeField("node");
            }
            else if (*action == "ake")
            {
                check.AllowKeys(e, path, {"time", "action", "from", "to"});
                ev.action = Action::kKeyExchange;
                ev.node = nodeField("from");
                ev.peer = nodeField("to");
                if (ev.node == ev.peer && ev.node != 0)
                    check.Problem(path, "key exchange needs two different nodes");
            }
            else if (*action == "tamper")
            {
                check.AllowKeys(e, path, {"time", "action", "node", "level", "byte"});
                ev.action = Action::kTamper;
                ev.node = nodeField("node");
                ev.tamper.level = static_cast<unsigned>(check.Unsigned(e, path, "level", true, 16).value_or(2));
                ev.tamper.byteIndex = check.Unsigned(e, path, "byte", false).value_or(0);
                const NodeSpec *spec = s.FindNode(ev.node);
                if (spec && (ev.tamper.level == 0 || ev.tamper.level > spec->chainDepth))
                    check.Problem(path + ".level", "outside the boot chain");
            }
            else if (*action == "attack")
            {
                check.AllowKeys(e, path, {"time", "action", "attack"});
                ev.action = Action::kAttack;
                auto attack = e.find("attack");
                if (attack == e.end())
                {
                    check.Problem(path + ".attack", "missing required key");
                    continue;
                }
                ParseAttack(check, *attack, path + ".attack", ev.attack);
                const AttackSpec &a = ev.attack;
                if (a.kind == AttackKind::kImpersonate)
                {
                    requireNode(path + ".attack.claimed_id", a.claimedId);
                    requireNode(path + ".attack.target", a.target);
                }
                if ((a.kind == AttackKind::kReplay || a.kind == AttackKind::kModify) && a.selector.source &&
                    *a.selector.source != 0)
                    requireNode(path + ".attack.frame.source", *a.selector.source);
            }
            else
            {
                check.Problem(path + ".action", "unknown action '" + *action + "'");
                continue;
            }
            s.events.push_back(ev);
        }
    }

    if (!check.Problems().empty())
        throw ScenarioError(check.Problems());
    return s;
}

Scenario LoadScenario(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ScenarioError({"cannot open scenario file '" + path.string() + "'"});
    std::ostringstream text;
    text << in.rdbuf();
    return ParseScenario(text.str(), path.parent_path());
}

} // namespace ibetrust::sim
