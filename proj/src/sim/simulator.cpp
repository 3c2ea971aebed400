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

#include "ibetrust/sim/simulator.hpp"

#include <fstream>
#include <memory>
#include <queue>
#include <sstream>
#include <tuple>
#include <variant>

#include <nlohmann/json.hpp>

#include "ibetrust/ake.hpp"
#include "ibetrust/ibe/pairing.hpp"
#include "ibetrust/protocol/base_station.hpp"
#include "ibetrust/protocol/node.hpp"
#include "ibetrust/sha256.hpp"

namespace ibetrust::sim {

using nlohmann::ordered_json;
using namespace ibetrust::protocol;

namespace {

constexpr std::string_view kProbeLabel = "ibetrust-key-confirmation";

Bytes ReadFile(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ScenarioError({"cannot read '" + path.string() + "'"});
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// MAC'd ping under a session key. Harness only; never billed or sent.
Sha256::Digest ProbeTag(const ake::SessionKey &key, std::uint16_t from, std::uint16_t to)
{
    Bytes message = ToBytes(kProbeLabel);
    PutU16(message, from);
    PutU16(message, to);
    return HmacSha256(key.key, message);
}

struct Origin
{
    std::optional<std::size_t> attack; ///< scheduled event index of the attack
    std::optional<std::size_t> honest; ///< scheduled event index of the honest action
};

struct Delivery
{
    Frame frame;
    std::uint16_t to;
    Origin origin;
};

struct QueueItem
{
    std::uint64_t time;
    std::uint64_t order;
    std::variant<std::size_t, Delivery> what;
};

struct Later
{
    bool operator()(const QueueItem &a, const QueueItem &b) const
    {
        return std::tie(a.time, a.order) > std::tie(b.time, b.order);
    }
};

struct Captured
{
    FrameKind kind;
    std::uint16_t source;
    std::uint16_t destination;
    std::vector<Frame> frames;
};

struct ArmedModify
{
    std::size_t attack;
    FrameSelector selector;
    std::vector<std::size_t> bits;
    std::size_t seen = 0;
};

class Simulation
{
public:
    Simulation(const Scenario &scenario, const SimOptions &options)
        : mScenario(scenario)
        , mOptions(options)
        , mSeed(options.seed.value_or(scenario.seed))
        , mMasterRng(mSeed)
        , mChannelRng(0)
        , mAdversaryRng(0)
    {
    }

    SimResult Execute()
    {
        LoadConstants();
        std::uint64_t bsSeed = mMasterRng.NextU64();
        mChannelRng = Rng(mMasterRng.NextU64());
        mAdversaryRng = Rng(mMasterRng.NextU64());

        ordered_json run;
        run["scenario"] = mScenario.name;
        run["profile"] = std::string(ibe::ProfileName(mScenario.profile));
        run["seed"] = mSeed;
        run["constants"] = ordered_json::parse(mConstants.ToJson());
        ordered_json roster = ordered_json::array();
        for (const NodeSpec &n : mScenario.nodes)
            roster.push_back(n.id);
        run["nodes"] = roster;
        Emit(0, "run", std::move(run));

        BuildBaseStation(bsSeed);
        BuildNodes();

        for (std::size_t i = 0; i < mScenario.events.size(); ++i)
            Push(mScenario.events[i].time, i);

        while (!mQueue.empty())
        {
            QueueItem item = mQueue.top();
            mQueue.pop();
            mNow = item.time;
            if (const auto *index = std::get_if<std::size_t>(&item.what))
                RunEvent(*index);
            else
                Deliver(std::get<Delivery>(item.what));
        }
        Finish();

        SimResult result;
        result.log = std::move(mLog);
        result.summary = SummarizeLog(result.log);
        return result;
    }

private:
    void LoadConstants()
    {
        if (mOptions.constants)
            mConstants = *mOptions.constants;
        else if (mScenario.energyConstants)
        {
            try
            {
                mConstants = energy::EnergyConstants::LoadFile(mScenario.energyConstants->string());
            }
            catch (const std::exception &e)
            {
                throw ScenarioError({"energy_constants: " + std::string(e.what())});
            }
        }
    }

    void Emit(std::uint64_t time, std::string_view type, ordered_json fields = ordered_json::object())
    {
        ordered_json line;
        line["t"] = time;
        line["type"] = std::string(type);
        for (auto &item : fields.items())
            line[item.key()] = std::move(item.value());
        mLog.push_back(line.dump());
        if (mOptions.verbose)
            *mOptions.verbose << mLog.back() << '\n';
    }

    void Push(std::uint64_t time, std::variant<std::size_t, Delivery> what)
    {
        mQueue.push(QueueItem{time, mOrder++, std::move(what)});
    }

    void BuildBaseStation(std::uint64_t bsSeed)
    {
        ibe::SecurityConfig config = ibe::SecurityConfig::ForProfile(mScenario.profile, mScenario.baseStation.masterSeed);
        std::optional<std::pair<ibe::PublicParams, ibe::MasterKey>> keys;
        if (mScenario.keysDir)
        {
            const std::filesystem::path &dir = *mScenario.keysDir;
            try
            {
                ibe::PublicParams params = ibe::DeserializeParams(ReadFile(dir / "params.bin"));
                ibe::MasterKey master = ibe::DeserializeMasterKey(params, ReadFile(dir / "master.key"));
                if (params.curve.P() != config.p || params.curve.Q() != config.q)
                    throw ScenarioError({"keys_dir: parameters do not belong to profile " +
                                         std::string(ibe::ProfileName(mScenario.profile))});
                keys.emplace(std::move(params), std::move(master));
            }
            catch (const DecodeError &e)
            {
                throw ScenarioError({"keys_dir: " + std::string(e.what())});
            }
        }
        else
        {
            keys = ibe::Setup(config);
        }
        BaseStationOptions options;
        options.checkNonces = !mScenario.baseStation.disableNonceCheck;
        mBase = std::make_unique<BaseStation>(keys->first, keys->second, bsSeed, options);
        mParams = mBase->Params();
        Emit(0, "setup", {{"identity", mBase->Identity()}, {"key_source", mScenario.keysDir ? "keys_dir" : "seed"}});
    }

    boot::BootChain ChainFor(const NodeSpec &spec) const
    {
        std::vector<Bytes> images;
        if (!spec.images.empty())
        {
            for (const std::filesystem::path &file : spec.images)
                images.push_back(ReadFile(file));
        }
        else
        {
            for (unsigned level = 1; level <= spec.chainDepth; ++level)
                images.push_back(SyntheticImage(spec.id, level, spec.imageBytes));
        }
        return boot::BootChain::Provision(std::move(images), mScenario.baseStation.trustOffset);
    }

    void BuildNodes()
    {
        for (const NodeSpec &spec : mScenario.nodes)
        {
            auto node = std::make_unique<SensorNode>(spec.id, ChainFor(spec), mMasterRng.NextU64(), mConstants);

            // DP: secrets from the base station, checked against key files when given.
            NodeSecrets secrets = mBase->Provision(spec.id);
            if (mScenario.keysDir)
            {
                std::filesystem::path file = *mScenario.keysDir / (secrets.key.identity + ".key");
                ibe::PrivateKey stored;
                try
                {
                    stored = ibe::DeserializePrivateKey(*mParams, ReadFile(file));
                }
                catch (const DecodeError &e)
                {
                    throw ScenarioError({file.string() + ": " + e.what()});
                }
                if (!(stored == secrets.key))
                    throw ScenarioError({file.string() + ": key does not match the master key"});
            }
            node->InstallSecrets(secrets);
            Emit(0, "provision", {{"node", spec.id}, {"identity", node->Identity()}});

            // PDP: controlled boot, trust value registered with the base station.
            std::size_t measured = node->Measurements().Records().size();
            boot::BootOutcome outcome = node->ControlledBoot();
            EmitMeasurements(0, *node, measured);
            if (const auto *ok = std::get_if<boot::BootSuccess>(&outcome))
            {
                mBase->Register(spec.id, ok->trustValue);
                node->MarkRegistered();
                Emit(0, "register", {{"node", spec.id}, {"trust_value", ok->trustValue.Text()}});
            }
            else
            {
                Emit(0, "register_failed", {{"node", spec.id}, {"failed_level", std::get<boot::Halt>(outcome).failedLevel}});
            }

            if (spec.tamper)
            {
                node->TamperImage(spec.tamper->level, spec.tamper->byteIndex);
                Emit(0, "tamper", {{"node", spec.id}, {"level", spec.tamper->level}, {"byte", spec.tamper->byteIndex}});
            }
            mNodes.emplace(spec.id, std::move(node));
        }
    }

    void EmitMeasurements(std::uint64_t time, const SensorNode &node, std::size_t from)
    {
        const auto &records = node.Measurements().Records();
        for (std::size_t i = from; i < records.size(); ++i)
        {
            Emit(time, "measure",
                 {{"node", node.Address()}, {"level", records[i].level}, {"digest", records[i].digest}, {"bit", records[i].bit}});
        }
    }

    void Outcome(std::size_t index, const std::string &result)
    {
        const ScheduledEvent &ev = mScenario.events[index];
        std::string subject = std::to_string(ev.node);
        if (ev.action == Action::kKeyExchange)
            subject += "->" + std::to_string(ev.peer);
        mResolved.insert(index);
        Emit(mNow, "outcome",
             {{"event", index}, {"action", std::string(ActionName(ev.action))}, {"subject", subject}, {"result", result}});
    }

    void Verdict(std::size_t index, std::string_view verdict, const std::string &detail)
    {
        if (mResolved.count(index))
            return;
        mResolved.insert(index);
        Emit(mNow, "verdict",
             {{"event", index},
              {"kind", std::string(AttackKindName(mScenario.events[index].attack.kind))},
              {"verdict", std::string(verdict)},
              {"detail", detail}});
    }

    SensorNode &Node(std::uint16_t id) { return *mNodes.at(id); }

    void RunEvent(std::size_t index)
    {
        const ScheduledEvent &ev = mScenario.events[index];
        switch (ev.action)
        {
        case Action::kBoot: {
            SensorNode &node = Node(ev.node);
            if (node.CurrentPhase() == Phase::kNew || node.CurrentPhase() == Phase::kDelivered)
            {
                Outcome(index, "skipped: not registered");
                return;
            }
            std::size_t measured = node.Measurements().Records().size();
            boot::BootOutcome outcome = node.DeployBoot(mNow);
            EmitMeasurements(mNow, node, measured);
            if (const auto *ok = std::get_if<boot::BootSuccess>(&outcome))
            {
                Emit(mNow, "boot", {{"node", ev.node}, {"result", "ok"}, {"trust_value", ok->trustValue.Text()}});
                Outcome(index, "deployed");
            }
            else
            {
                unsigned level = std::get<boot::Halt>(outcome).failedLevel;
                Emit(mNow, "boot", {{"node", ev.node}, {"result", "halt"}, {"failed_level", level}});
                Outcome(index, "halted at level " + std::to_string(level));
            }
            return;
        }
        case Action::kTrustedAuth: {
            SensorNode &node = Node(ev.node);
            if (node.CurrentPhase() != Phase::kDeployed)
            {
                Emit(mNow, "ta_skipped", {{"node", ev.node}, {"phase", std::string(PhaseName(node.CurrentPhase()))}});
                Outcome(index, "skipped: phase " + std::string(PhaseName(node.CurrentPhase())));
                return;
            }
            std::vector<Frame> frames = node.StartTrustedAuth(mNow);
            Emit(mNow, "ta_start",
                 {{"node", ev.node}, {"exchange", node.CurrentExchange()}, {"frames", frames.size()}, {"bytes", WireBytes(frames)}});
            Transmit(std::move(frames), Origin{std::nullopt, index});
            return;
        }
        case Action::kKeyExchange: {
            SensorNode &node = Node(ev.node);
            if (node.CurrentPhase() != Phase::kTrusted)
            {
                Emit(mNow, "ake_skipped", {{"from", ev.node}, {"to", ev.peer}, {"phase", std::string(PhaseName(node.CurrentPhase()))}});
                Outcome(index, "skipped: initiator phase " + std::string(PhaseName(node.CurrentPhase())));
                return;
            }
            AkeStart start = node.InitiateAke(mNow, ev.peer);
            Emit(mNow, "ake_start", {{"from", ev.node}, {"to", ev.peer}, {"bytes", start.frame.WireSize()}});
            mInitiatorKeys.emplace(index, start.key);
            std::vector<Frame> frames{std::move(start.frame)};
            Transmit(std::move(frames), Origin{std::nullopt, index});
            return;
        }
        case Action::kTerminate: {
            bool known = mBase->Terminate(ev.node);
            Node(ev.node).Terminate();
            Emit(mNow, "terminate", {{"node", ev.node}, {"known", known}});
            Outcome(index, "terminated");
            return;
        }
        case Action::kTamper: {
            Node(ev.node).TamperImage(ev.tamper.level, ev.tamper.byteIndex);
            Emit(mNow, "tamper", {{"node", ev.node}, {"level", ev.tamper.level}, {"byte", ev.tamper.byteIndex}});
            Outcome(index, "image modified");
            return;
        }
        case Action::kAttack:
            Inject(index);
            return;
        }
    }

    void Inject(std::size_t index)
    {
        const AttackSpec &attack = mScenario.events[index].attack;
        std::string kind(AttackKindName(attack.kind));
        switch (attack.kind)
        {
        case AttackKind::kReplay: {
            std::size_t seen = 0;
            for (const Captured &c : mCaptured)
            {
                if (c.kind != attack.selector.kind || (attack.selector.source && *attack.selector.source != c.source))
                    continue;
                if (seen++ != attack.selector.index)
                    continue;
                Emit(mNow, "attack_injected", {{"event", index}, {"kind", kind}, {"source", c.source}, {"destination", c.destination}});
                Transmit(c.frames, Origin{index, std::nullopt});
                return;
            }
            Emit(mNow, "attack_injected", {{"event", index}, {"kind", kind}, {"matched", false}});
            Verdict(index, "no_op", "no captured frame matches the selector");
            return;
        }
        case AttackKind::kModify:
            mArmed.push_back(ArmedModify{index, attack.selector, attack.flipBits});
            Emit(mNow, "attack_armed", {{"event", index}, {"kind", kind}, {"frame_kind", std::string(FrameKindName(attack.selector.kind))}});
            return;
        case AttackKind::kFakeNode: {
            // Self-chosen identity, random trust value; sealed to the base station like a real request.
            std::string hex = ToHex(mAdversaryRng.RandomBytes(4));
            TaRequest request{attack.claimedId, boot::TrustValue(hex), static_cast<std::uint16_t>(mAdversaryRng.NextU64())};
            SealedMessage sealed = Seal(*mParams, IdentityForAddress(kBaseStationAddress), EncodeTaRequest(request), mAdversaryRng);
            std::vector<Frame> frames = Fragment(sealed.bytes, FrameKind::kTaRequest, attack.claimedId, kBaseStationAddress,
                                                 static_cast<std::uint16_t>(mAdversaryRng.NextU64()));
            Emit(mNow, "attack_injected", {{"event", index}, {"kind", kind}, {"claimed_id", attack.claimedId}, {"trust_value", hex}});
            Transmit(std::move(frames), Origin{index, std::nullopt});
            return;
        }
        case AttackKind::kImpersonate: {
            // R = r Q_A is public knowledge; the matching key needs S_A, which the adversary lacks.
            const ibe::Curve &curve = mParams->curve;
            std::string idA = IdentityForAddress(attack.claimedId);
            std::string idB = IdentityForAddress(attack.target);
            ibe::G1Point qa = ibe::HashToPoint(*mParams, idA);
            ibe::G1Point qb = ibe::HashToPoint(*mParams, idB);
            ake::AkeMessage message;
            message.senderId = idA;
            message.receiverId = idB;
            message.senderAddress = attack.claimedId;
            message.r = curve.Multiply(qa, mAdversaryRng.NonZeroBelow(curve.Q()));
            message.nonce = static_cast<std::uint16_t>(mAdversaryRng.NextU64());
            message.mac = ake::ComputeMessageMac(*mParams, attack.claimedId, message.nonce, message.r);

            BigInt h = ake::SessionScalar(*mParams, message.r, idA, idB);
            ibe::GtElement guess = ibe::Pairing(curve, curve.Add(message.r, curve.Multiply(qa, h)), qb);
            ake::SessionKey guessed;
            if (!ibe::GtIsIdentity(guess))
                guessed = ake::DeriveKey(*mParams, guess, idA, idB, message.r);
            mAdversaryKeys.emplace(index, guessed);

            Frame frame;
            frame.header = FrameHeader{FrameKind::kAke, FrameHeader::kFirstFragment, attack.target, attack.claimedId,
                                       static_cast<std::uint16_t>(mAdversaryRng.NextU64())};
            frame.payload = EncodeAkePayload(*mParams, message);
            Emit(mNow, "attack_injected", {{"event", index}, {"kind", kind}, {"claimed_id", attack.claimedId}, {"target", attack.target}});
            Transmit({std::move(frame)}, Origin{index, std::nullopt});
            return;
        }
        }
    }

    void ApplyModifications(std::vector<Frame> &frames, Origin &origin)
    {
        const FrameHeader &head = frames.front().header;
        for (auto it = mArmed.begin(); it != mArmed.end(); ++it)
        {
            if (it->selector.kind != head.kind || (it->selector.source && *it->selector.source != head.source))
                continue;
            if (it->seen++ != it->selector.index)
                continue;
            std::size_t totalBits = 0;
            for (const Frame &f : frames)
                totalBits += f.payload.size() * 8;
            std::size_t flipped = 0;
            for (std::size_t bit : it->bits)
            {
                if (bit >= totalBits)
                    continue;
                std::size_t byte = bit / 8;
                for (Frame &f : frames)
                {
                    if (byte < f.payload.size())
                    {
                        f.payload[byte] ^= static_cast<std::uint8_t>(0x80u >> (bit % 8));
                        break;
                    }
                    byte -= f.payload.size();
                }
                ++flipped;
            }
            std::size_t attack = it->attack;
            mArmed.erase(it);
            Emit(mNow, "attack_applied",
                 {{"event", attack}, {"source", head.source}, {"destination", head.destination}, {"bits_flipped", flipped}});
            if (flipped == 0)
            {
                Verdict(attack, "no_op", "every bit position lies outside the message");
                return;
            }
            origin.attack = attack;
            return;
        }
    }

    void Transmit(std::vector<Frame> frames, Origin origin)
    {
        if (frames.empty())
            return;
        if (!origin.attack)
            ApplyModifications(frames, origin);
        const FrameHeader &head = frames.front().header;
        if (mScenario.channel.adversaryTap && !origin.attack)
            mCaptured.push_back(Captured{head.kind, head.source, head.destination, frames});

        for (Frame &frame : frames)
        {
            ordered_json fields{{"src", frame.header.source},
                                {"dst", frame.header.destination},
                                {"kind", std::string(FrameKindName(frame.header.kind))},
                                {"seq", frame.header.sequence},
                                {"bytes", frame.WireSize()}};
            if (origin.attack)
                fields["attack"] = *origin.attack;
            Emit(mNow, "tx", fields);
            if (mScenario.channel.lossProbability > 0.0 && mChannelRng.UniformUnit() < mScenario.channel.lossProbability)
            {
                Emit(mNow, "drop", {{"src", frame.header.source}, {"dst", frame.header.destination}, {"seq", frame.header.sequence}});
                continue;
            }
            std::uint16_t to = frame.header.destination;
            Push(mNow + mScenario.channel.latency, Delivery{std::move(frame), to, origin});
        }
    }

    void Deliver(Delivery delivery)
    {
        const FrameHeader head = delivery.frame.header;
        auto key = std::make_tuple(delivery.to, head.source, head.kind);
        Origin &taint = mTaint[key];
        if (delivery.origin.attack)
            taint.attack = delivery.origin.attack;
        if (delivery.origin.honest)
            taint.honest = delivery.origin.honest;

        std::optional<Reassembler::Message> message;
        if (delivery.to == kBaseStationAddress)
            message = mBaseReassembler.Offer(delivery.frame);
        else if (mNodes.count(delivery.to))
            message = mNodeReassemblers[delivery.to].Offer(delivery.frame);
        else
        {
            Emit(mNow, "undeliverable", {{"dst", delivery.to}, {"src", head.source}});
            return;
        }
        if (!message)
            return;
        Origin origin = taint;
        mTaint.erase(key);

        if (delivery.to == kBaseStationAddress)
            AtBaseStation(*message, origin);
        else
            AtNode(delivery.to, *message, origin);
    }

    void AtBaseStation(const Reassembler::Message &message, const Origin &origin)
    {
        if (message.kind != FrameKind::kTaRequest)
        {
            Emit(mNow, "bs_ignored", {{"src", message.source}, {"kind", std::string(FrameKindName(message.kind))}});
            if (origin.attack)
                Verdict(*origin.attack, "no_op", "base station ignores this frame kind");
            return;
        }
        auto result = mBase->HandleTaRequest(mNow, message.data);
        if (auto *accepted = std::get_if<TaAccepted>(&result))
        {
            Emit(mNow, "bs_accept",
                 {{"node", accepted->address}, {"nonce", accepted->nonce}, {"trust_ids", accepted->trustIds.size()}, {"ack_frames", accepted->ackFrames.size()}});
            if (origin.attack)
                Verdict(*origin.attack, "succeeded", "base station accepted the request from " + std::to_string(accepted->address));
            Transmit(std::move(accepted->ackFrames), Origin{std::nullopt, origin.honest});
            return;
        }
        const TaRejected &rejected = std::get<TaRejected>(result);
        std::string reason(TaRejectReasonName(rejected.reason));
        ordered_json fields{{"src", message.source}, {"reason", reason}};
        if (rejected.address)
            fields["node"] = *rejected.address;
        Emit(mNow, "bs_reject", fields);
        if (origin.attack)
            Verdict(*origin.attack, "blocked", "base station rejected: " + reason);
        if (origin.honest)
            Outcome(*origin.honest, "rejected by base station: " + reason);
    }

    void AtNode(std::uint16_t address, const Reassembler::Message &message, const Origin &origin)
    {
        SensorNode &node = Node(address);
        if (message.kind == FrameKind::kTaAck)
        {
            AckOutcome outcome = node.HandleAck(mNow, message.frames);
            std::string name(AckOutcomeName(outcome));
            Emit(mNow, "ack", {{"node", address}, {"outcome", name}, {"trust_ids", node.TrustIds().size()}});
            if (origin.attack)
                Verdict(*origin.attack, outcome == AckOutcome::kInstalled ? "succeeded" : "blocked", "node ack outcome: " + name);
            if (origin.honest)
                Outcome(*origin.honest, outcome == AckOutcome::kInstalled ? "trusted" : "ack " + name);
            return;
        }
        if (message.kind != FrameKind::kAke)
        {
            Emit(mNow, "node_ignored", {{"node", address}, {"kind", std::string(FrameKindName(message.kind))}});
            if (origin.attack)
                Verdict(*origin.attack, "no_op", "node ignores this frame kind");
            return;
        }

        auto result = node.HandleAke(mNow, message.frames.front());
        if (const auto *reject = std::get_if<PeerReject>(&result))
        {
            std::string reason(PeerRejectReasonName(reject->reason));
            Emit(mNow, "ake_reject", {{"node", address}, {"from", message.source}, {"reason", reason}});
            if (origin.attack)
                Verdict(*origin.attack, "blocked", "responder rejected: " + reason);
            if (origin.honest)
                Outcome(*origin.honest, "rejected by responder: " + reason);
            return;
        }
        const ake::SessionKey &responderKey = std::get<ake::SessionKey>(result);

        // Which key the sender side holds: the honest initiator's, or the adversary's best guess.
        std::optional<ake::SessionKey> senderKey;
        if (origin.attack && mAdversaryKeys.count(*origin.attack))
            senderKey = mAdversaryKeys.at(*origin.attack);
        else if (origin.honest && mInitiatorKeys.count(*origin.honest))
            senderKey = mInitiatorKeys.at(*origin.honest);
        else if (origin.attack)
            senderKey = FindInitiatorKey(message.source, address);
        bool probe = senderKey && ProbeTag(*senderKey, message.source, address) == ProbeTag(responderKey, message.source, address);
        Emit(mNow, "ake_accept", {{"node", address}, {"from", message.source}, {"probe", probe ? "ok" : "failed"}});
        if (!probe)
            Emit(mNow, "probe_failed", {{"node", address}, {"from", message.source}});
        if (origin.attack)
        {
            if (probe)
                Verdict(*origin.attack, "succeeded", "responder accepted and key confirmation passed");
            else
                Verdict(*origin.attack, "blocked", "key confirmation probe failed");
        }
        if (origin.honest)
        {
            Outcome(*origin.honest, probe ? "established, probe ok" : "established, probe failed");
        }
    }

    /// A replayed key-exchange frame carries no origin of its own; the
    /// adversary side is credited with the key of the original exchange.
    std::optional<ake::SessionKey> FindInitiatorKey(std::uint16_t from, std::uint16_t to) const
    {
        for (const auto &[index, key] : mInitiatorKeys)
        {
            const ScheduledEvent &ev = mScenario.events[index];
            if (ev.node == from && ev.peer == to)
                return key;
        }
        return std::nullopt;
    }

    void Finish()
    {
        for (const ArmedModify &armed : mArmed)
            Verdict(armed.attack, "no_op", "no frame matched the selector");
        mArmed.clear();

        std::size_t timeouts = mBaseReassembler.ExpirePending();
        for (auto &[address, reassembler] : mNodeReassemblers)
            timeouts += reassembler.ExpirePending();
        Emit(mNow, "timeouts", {{"count", timeouts}});

        for (std::size_t i = 0; i < mScenario.events.size(); ++i)
        {
            if (mResolved.count(i))
                continue;
            if (mScenario.events[i].action == Action::kAttack)
                Verdict(i, "no_op", "injected frames never completed at the receiver");
            else
                Outcome(i, mScenario.channel.lossProbability > 0.0 ? "lost in channel" : "incomplete");
        }

        for (const NodeSpec &spec : mScenario.nodes)
        {
            const SensorNode &node = *mNodes.at(spec.id);
            ordered_json ids = ordered_json::array();
            for (std::uint16_t id : node.TrustIds())
                ids.push_back(id);
            Emit(mNow, "node_final",
                 {{"node", spec.id},
                  {"phase", std::string(PhaseName(node.CurrentPhase()))},
                  {"trust_value", node.CurrentTrustValue() ? node.CurrentTrustValue()->Text() : "-"},
                  {"trust_ids", ids}});
        }
        ordered_json list = ordered_json::array();
        for (std::uint16_t id : mBase->TrustIdList())
            list.push_back(id);
        ordered_json records = ordered_json::array();
        for (const auto &[address, record] : mBase->Records())
            records.push_back({{"node", address}, {"status", std::string(TrustStatusName(record.status))}});
        Emit(mNow, "bs_final", {{"trust_ids", list}, {"records", records}});

        for (const NodeSpec &spec : mScenario.nodes)
        {
            for (const energy::EnergyEvent &e : mNodes.at(spec.id)->Ledger().Events())
            {
                Emit(e.time, "energy",
                     {{"node", spec.id},
                      {"category", std::string(energy::CategoryName(e.category))},
                      {"activity", std::string(energy::ActivityName(e.activity))},
                      {"fj", e.energy},
                      {"quantity", e.quantity},
                      {"exchange", e.exchange}});
            }
        }
    }

    const Scenario &mScenario;
    const SimOptions &mOptions;
    std::uint64_t mSeed;
    Rng mMasterRng;
    Rng mChannelRng;
    Rng mAdversaryRng;
    energy::EnergyConstants mConstants;

    std::unique_ptr<BaseStation> mBase;
    std::shared_ptr<const ibe::PublicParams> mParams;
    std::map<std::uint16_t, std::unique_ptr<SensorNode>> mNodes;
    Reassembler mBaseReassembler;
    std::map<std::uint16_t, Reassembler> mNodeReassemblers;
    std::map<std::tuple<std::uint16_t, std::uint16_t, FrameKind>, Origin> mTaint;

    std::priority_queue<QueueItem, std::vector<QueueItem>, Later> mQueue;
    std::uint64_t mOrder = 0;
    std::uint64_t mNow = 0;

    std::vector<Captured> mCaptured;
    std::vector<ArmedModify> mArmed;
    std::map<std::size_t, ake::SessionKey> mInitiatorKeys;
    std::map<std::size_t, ake::SessionKey> mAdversaryKeys;
    std::set<std::size_t> mResolved;

    std::vector<std::string> mLog;
};

} // namespace

Bytes SyntheticImage(std::uint16_t address, unsigned level, std::size_t size)
{
    Bytes out;
    out.reserve(size);
    for (std::uint32_t block = 0; out.size() < size; ++block)
    {
        Bytes seed = ToBytes("ibetrust-image");
        PutU16(seed, address);
        PutU32(seed, level);
        PutU32(seed, block);
        Sha256::Digest d = Sha256Of(seed);
        for (std::uint8_t b : d)
        {
            if (out.size() == size)
                break;
            out.push_back(b);
        }
    }
    return out;
}

SimResult Run(const Scenario &scenario, const SimOptions &options)
{
    return Simulation(scenario, options).Execute();
}

std::vector<std::string> ReadLog(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open log '" + path.string() + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
    {
        if (!line.empty())
            lines.push_back(line);
    }
    return lines;
}

SimSummary SummarizeLog(const std::vector<std::string> &lines)
{
    SimSummary s;
    std::map<std::uint16_t, energy::EnergyLedger> ledgers;
    std::vector<std::uint16_t> roster;
    bool sawRun = false;
    for (std::size_t i = 0; i < lines.size(); ++i)
    {
        ordered_json r;
        try
        {
            r = ordered_json::parse(lines[i]);
            std::string type = r.at("type").get<std::string>();
            if (type == "run")
            {
                sawRun = true;
                s.scenario = r.at("scenario").get<std::string>();
                s.profile = r.at("profile").get<std::string>();
                s.seed = r.at("seed").get<std::uint64_t>();
                s.constants = energy::EnergyConstants::FromJson(r.at("constants").dump());
                roster = r.at("nodes").get<std::vector<std::uint16_t>>();
            }
            else if (type == "tx")
            {
                ++s.framesSent;
                s.bytesSent += r.at("bytes").get<std::uint64_t>();
            }
            else if (type == "drop")
                ++s.framesDropped;
            else if (type == "timeouts")
                s.reassemblyTimeouts += r.at("count").get<std::uint64_t>();
            else if (type == "bs_reject")
                ++s.baseStationRejections[r.at("reason").get<std::string>()];
            else if (type == "ake_reject")
                ++s.peerRejections[r.at("reason").get<std::string>()];
            else if (type == "probe_failed")
                ++s.peerRejections["key_confirmation_failed"];
            else if (type == "ack" && r.at("outcome").get<std::string>() != "installed")
                ++s.ackFailures[r.at("outcome").get<std::string>()];
            else if (type == "verdict")
                s.attacks.push_back(AttackVerdict{r.at("event").get<std::size_t>(), r.at("t").get<std::uint64_t>(),
                                                  r.at("kind").get<std::string>(), r.at("verdict").get<std::string>(),
                                                  r.at("detail").get<std::string>()});
            else if (type == "outcome")
                s.outcomes.push_back(EventOutcome{r.at("event").get<std::size_t>(), r.at("t").get<std::uint64_t>(),
                                                  r.at("action").get<std::string>(), r.at("subject").get<std::string>(),
                                                  r.at("result").get<std::string>()});
            else if (type == "node_final")
                s.nodes.push_back(NodeFinal{r.at("node").get<std::uint16_t>(), r.at("phase").get<std::string>(),
                                            r.at("trust_value").get<std::string>(),
                                            r.at("trust_ids").get<std::vector<std::uint16_t>>()});
            else if (type == "bs_final")
            {
                s.baseStationTrustList = r.at("trust_ids").get<std::vector<std::uint16_t>>();
                for (const auto &rec : r.at("records"))
                    s.baseStationStatus[rec.at("node").get<std::uint16_t>()] = rec.at("status").get<std::string>();
            }
            else if (type == "energy")
            {
                energy::EnergyEvent e;
                e.time = r.at("t").get<std::uint64_t>();
                e.category = energy::ParseCategory(r.at("category").get<std::string>());
                e.activity = energy::ParseActivity(r.at("activity").get<std::string>());
                e.energy = r.at("fj").get<energy::Femtojoules>();
                e.quantity = r.at("quantity").get<std::uint64_t>();
                e.exchange = r.at("exchange").get<std::uint32_t>();
                ledgers[r.at("node").get<std::uint16_t>()].Record(e);
            }
        }
        catch (const std::exception &e)
        {
            throw DecodeError("log line " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    if (!sawRun)
        throw DecodeError("log has no run record");
    std::sort(s.attacks.begin(), s.attacks.end(), [](const AttackVerdict &a, const AttackVerdict &b) { return a.event < b.event; });
    std::sort(s.outcomes.begin(), s.outcomes.end(), [](const EventOutcome &a, const EventOutcome &b) { return a.event < b.event; });
    for (std::uint16_t id : roster)
        s.ledgers.push_back(energy::NodeLedger{id, ledgers[id]});
    return s;
}

energy::EnergyReport SimSummary::Energy() const
{
    return energy::BuildReport(ledgers, constants, baseStationTrustList.size());
}

std::string SimSummary::RenderText() const
{
    std::ostringstream out;
    out << "scenario " << scenario << " (profile " << profile << ", seed " << seed << ")\n\n";

    out << "Nodes\n";
    for (const NodeFinal &n : nodes)
    {
        out << "  " << n.address << "  phase " << n.phase << "  trust value " << n.trustValue << "  trustIDs [";
        for (std::size_t i = 0; i < n.trustIds.size(); ++i)
            out << (i ? "," : "") << n.trustIds[i];
        out << "]";
        auto status = baseStationStatus.find(n.address);
        if (status != baseStationStatus.end())
            out << "  base station record " << status->second;
        out << '\n';
    }
    out << "  base station trustID list: " << baseStationTrustList.size() << " ids\n\n";

    out << "Scheduled events\n";
    for (const EventOutcome &o : outcomes)
        out << "  #" << o.event << " t=" << o.time << " " << o.action << " " << o.subject << ": " << o.result << '\n';
    out << "  (key-confirmation probe is a harness check, not part of the protocol)\n\n";

    out << "Rejections\n";
    if (baseStationRejections.empty() && peerRejections.empty() && ackFailures.empty())
        out << "  none\n";
    for (const auto &[reason, count] : baseStationRejections)
        out << "  base station " << reason << ": " << count << '\n';
    for (const auto &[reason, count] : peerRejections)
        out << "  peer " << reason << ": " << count << '\n';
    for (const auto &[reason, count] : ackFailures)
        out << "  ack " << reason << ": " << count << '\n';
    out << '\n';

    out << "Attacks\n";
    if (attacks.empty())
        out << "  none\n";
    for (const AttackVerdict &a : attacks)
        out << "  #" << a.event << " " << a.kind << ": " << a.verdict << " (" << a.detail << ")\n";
    out << '\n';

    out << "Channel\n";
    out << "  frames sent " << framesSent << ", bytes " << bytesSent << ", dropped " << framesDropped
        << ", reassembly timeouts " << reassemblyTimeouts << "\n\n";

    out << Energy().RenderText();
    return out.str();
}

std::string SimSummary::RenderCsv() const
{
    std::ostringstream out;
    out << Energy().RenderCsv();
    for (const AttackVerdict &a : attacks)
        out << "attack," << a.event << ',' << a.kind << ',' << a.verdict << '\n';
    for (const auto &[reason, count] : baseStationRejections)
        out << "reject,base_station," << reason << ',' << count << '\n';
    for (const auto &[reason, count] : peerRejections)
        out << "reject,peer," << reason << ',' << count << '\n';
    for (const NodeFinal &n : nodes)
        out << "node," << n.address << ",phase," << n.phase << '\n';
    return out.str();
}

} // namespace ibetrust::sim
