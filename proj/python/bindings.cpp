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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>

#include "ibetrust/ake.hpp"
#include "ibetrust/energy.hpp"
#include "ibetrust/ibe/ibe.hpp"
#include "ibetrust/ibe/pairing.hpp"
#include "ibetrust/protocol/frame.hpp"
#include "ibetrust/secure_boot.hpp"
#include "ibetrust/sim/scenario.hpp"
#include "ibetrust/sim/simulator.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace ibetrust;

namespace {

Bytes FromPy(const py::bytes &b)
{
    std::string s = b;
    return Bytes(s.begin(), s.end());
}

py::bytes ToPy(const Bytes &b)
{
    return py::bytes(reinterpret_cast<const char *>(b.data()), b.size());
}

/// Public parameters and the master key, kept together for the bindings.
struct ParamsHandle
{
    ibe::PublicParams params;
    ibe::MasterKey master;
    ibe::Profile profile;
};

ParamsHandle Setup(const std::string &profile, std::uint64_t seed)
{
    ibe::Profile parsed = ibe::ParseProfile(profile);
    auto [params, master] = ibe::Setup(ibe::SecurityConfig::ForProfile(parsed, seed));
    return ParamsHandle{std::move(params), std::move(master), parsed};
}

py::dict RunScenario(const std::filesystem::path &path, std::optional<std::uint64_t> seed)
{
    sim::Scenario scenario;
    try
    {
        scenario = sim::LoadScenario(path);
    }
    catch (const sim::ScenarioError &e)
    {
        throw py::value_error(e.what());
    }
    sim::SimOptions options;
    options.seed = seed;
    sim::SimResult result = sim::Run(scenario, options);
    py::list verdicts;
    for (const sim::AttackVerdict &v : result.summary.attacks)
        verdicts.append(py::dict(py::arg("event") = v.event, py::arg("kind") = v.kind, py::arg("verdict") = v.verdict,
                                 py::arg("detail") = v.detail));
    py::dict phases;
    for (const sim::NodeFinal &n : result.summary.nodes)
        phases[py::int_(n.address)] = n.phase;
    py::dict out;
    out["report"] = result.summary.RenderText();
    out["csv"] = result.summary.RenderCsv();
    out["log"] = result.log;
    out["attacks"] = verdicts;
    out["phases"] = phases;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Bindings for the IBE-Trust simulator core";

    py::class_<ParamsHandle>(m, "Params")
        .def_property_readonly("profile", [](const ParamsHandle &h) { return std::string(ibe::ProfileName(h.profile)); })
        .def_property_readonly("p", [](const ParamsHandle &h) { return ToHexString(h.params.curve.P()); })
        .def_property_readonly("q", [](const ParamsHandle &h) { return ToHexString(h.params.curve.Q()); })
        .def_property_readonly("point_bytes", [](const ParamsHandle &h) { return h.params.curve.PointBytes(); })
        .def("serialize", [](const ParamsHandle &h) { return ToPy(ibe::SerializeParams(h.params)); });

    py::class_<ibe::PrivateKey>(m, "PrivateKey")
        .def_readonly("identity", &ibe::PrivateKey::identity)
        .def("serialize", [](const ibe::PrivateKey &k) { return ToPy(ibe::SerializePrivateKey(k)); });

    m.def("setup", &Setup, py::arg("profile") = "toy", py::arg("seed") = 1,
          "Generate public parameters and a master key for the toy or demo profile.");
    m.def(
        "extract", [](const ParamsHandle &h, const std::string &id) { return ibe::Extract(h.params, h.master, id); },
        py::arg("params"), py::arg("identity"));
    m.def(
        "encrypt",
        [](const ParamsHandle &h, const std::string &id, const py::bytes &message, std::uint64_t seed) {
            Rng rng(seed);
            return ToPy(ibe::EncodeCiphertext(h.params, ibe::Encrypt(h.params, id, FromPy(message), rng)));
        },
        py::arg("params"), py::arg("identity"), py::arg("message"), py::arg("seed") = 0,
        "FullIdent encryption of one block (at most 16 bytes).");
    m.def(
        "decrypt",
        [](const ParamsHandle &h, const ibe::PrivateKey &key, const py::bytes &ciphertext) -> std::optional<py::bytes> {
            ibe::Ciphertext c;
            try
            {
                c = ibe::DecodeCiphertext(h.params, FromPy(ciphertext));
            }
            catch (const DecodeError &)
            {
                return std::nullopt;
            }
            auto plain = ibe::Decrypt(h.params, key, c);
            if (!plain)
                return std::nullopt;
            return ToPy(*plain);
        },
        py::arg("params"), py::arg("key"), py::arg("ciphertext"), "Returns None when the ciphertext is rejected.");
    m.def(
        "verify_bilinearity",
        [](const ParamsHandle &h, std::uint64_t a, std::uint64_t b) {
            const ibe::Curve &c = h.params.curve;
            const ibe::G1Point &p = h.params.generator;
            ibe::GtElement lhs = ibe::Pairing(c, c.Multiply(p, BigInt(a)), c.Multiply(p, BigInt(b)));
            ibe::GtElement rhs = ibe::GtPow(c, ibe::Pairing(c, p, p), BigInt(a) * BigInt(b));
            return lhs == rhs;
        },
        py::arg("params"), py::arg("a"), py::arg("b"), "Checks e(aP, bP) == e(P, P)^(ab).");
    m.def(
        "key_exchange",
        [](const ParamsHandle &h, const std::string &idA, const std::string &idB, std::uint64_t seed) -> py::tuple {
            Rng rng(seed);
            ibe::PrivateKey a = ibe::Extract(h.params, h.master, idA);
            ibe::PrivateKey b = ibe::Extract(h.params, h.master, idB);
            ake::Initiation init = ake::Initiate(h.params, a, 1, idB, rng);
            auto resp = ake::Respond(h.params, b, init.message);
            py::bytes initiator = ToPy(Bytes(init.key.key.begin(), init.key.key.end()));
            if (const auto *key = std::get_if<ake::SessionKey>(&resp))
                return py::make_tuple(initiator, ToPy(Bytes(key->key.begin(), key->key.end())));
            return py::make_tuple(initiator, py::none());
        },
        py::arg("params"), py::arg("initiator"), py::arg("responder"), py::arg("seed") = 0,
        "One-pass exchange; returns (initiator key, responder key or None).");

    m.def("measure", [](const py::bytes &image) { return boot::Measure(FromPy(image)); }, py::arg("image"));
    m.def(
        "trust_value",
        [](const std::string &digest, std::size_t offset) { return boot::TrustValueFromDigest(digest, offset).Text(); },
        py::arg("digest"), py::arg("offset") = boot::kDefaultTrustOffset);
    m.def(
        "boot",
        [](const std::vector<py::bytes> &reference, const std::vector<py::bytes> &actual, std::size_t offset) {
            std::vector<Bytes> images;
            for (const py::bytes &b : reference)
                images.push_back(FromPy(b));
            boot::BootChain chain = boot::BootChain::Provision(images, offset);
            for (std::size_t i = 0; i < actual.size() && i < chain.images.size(); ++i)
                chain.images[i].bytes = FromPy(actual[i]);
            boot::BootOutcome outcome = boot::Boot(chain);
            py::dict out;
            if (const auto *ok = std::get_if<boot::BootSuccess>(&outcome))
            {
                out["ok"] = true;
                out["trust_value"] = ok->trustValue.Text();
            }
            else
            {
                out["ok"] = false;
                out["failed_level"] = std::get<boot::Halt>(outcome).failedLevel;
            }
            return out;
        },
        py::arg("reference"), py::arg("actual"), py::arg("offset") = boot::kDefaultTrustOffset,
        "Provision a chain from reference images, then boot the actual images.");

    m.def("joules", &energy::Joules, py::arg("power_w"), py::arg("seconds"));
    m.def(
        "e_comm", [](std::uint64_t tx, std::uint64_t rx) { return energy::CommEnergy({}, tx, rx); }, py::arg("tx_bytes"),
        py::arg("rx_bytes"));
    m.def(
        "e_total",
        [](std::uint64_t boots, std::uint64_t switches, std::uint64_t bits, std::uint64_t tx, std::uint64_t rx) {
            return energy::TotalEnergy({}, boots, switches, bits, tx, rx);
        },
        py::arg("boots"), py::arg("switches"), py::arg("encrypted_bits"), py::arg("tx_bytes"), py::arg("rx_bytes"));
    m.def("paper_airtime", &energy::AirtimeEstimate, py::arg("payload_bytes"));
    m.def(
        "fragment",
        [](const py::bytes &data) {
            std::vector<protocol::Frame> frames =
                protocol::Fragment(FromPy(data), protocol::FrameKind::kData, 1, 0, 0);
            py::list out;
            for (const protocol::Frame &f : frames)
                out.append(ToPy(protocol::EncodeFrame(f)));
            return out;
        },
        py::arg("data"), "Encoded frames carrying data, 106 payload bytes per frame.");

    m.def("run_scenario", &RunScenario, py::arg("path"), py::arg("seed") = py::none(),
          "Run a scenario file; returns report, csv, log lines, attack verdicts and final phases.");

    py::register_exception<DecodeError>(m, "DecodeError", PyExc_ValueError);

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
