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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ibetrust/ibe/ibe.hpp"
#include "ibetrust/protocol/payload.hpp"
#include "ibetrust/sim/scenario.hpp"
#include "ibetrust/sim/simulator.hpp"

namespace fs = std::filesystem;
using namespace ibetrust;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

/// Configuration and input problems; reported with exit code 2.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

fs::path DataDir()
{
    if (const char *env = std::getenv("IBETRUST_DATA_DIR"))
        return env;
    return IBETRUST_DATA_DIR;
}

/// A bare name such as "demo" refers to a bundled scenario.
fs::path ResolveScenario(const std::string &arg)
{
    fs::path path(arg);
    if (fs::exists(path))
        return path;
    if (!path.has_parent_path() && path.extension().empty())
    {
        fs::path bundled = DataDir() / "scenarios" / (arg + ".json");
        if (fs::exists(bundled))
            return bundled;
    }
    throw UsageError("scenario file not found: " + arg);
}

void WriteFile(const fs::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write " + path.string());
    out << text;
}

void WriteBytes(const fs::path &path, const Bytes &bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write " + path.string());
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::set<std::uint16_t> ParseRoster(const std::string &text)
{
    std::set<std::uint16_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
    {
        unsigned long id = 0;
        try
        {
            std::size_t used = 0;
            id = std::stoul(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
        }
        catch (const std::exception &)
        {
            throw UsageError("roster entry is not a number: '" + item + "'");
        }
        if (id == 0 || id > 0xffff)
            throw UsageError("roster ids must be within 1..65535");
        out.insert(static_cast<std::uint16_t>(id));
    }
    if (out.empty())
        throw UsageError("roster is empty");
    return out;
}

int Keygen(const std::string &profileName, const fs::path &outDir, unsigned nodes, const std::string &roster,
           std::uint64_t seed)
{
    ibe::Profile profile;
    try
    {
        profile = ibe::ParseProfile(profileName);
    }
    catch (const std::invalid_argument &)
    {
        throw UsageError("unknown profile '" + profileName + "' (expected toy or demo)");
    }
    std::set<std::uint16_t> ids;
    if (!roster.empty())
        ids = ParseRoster(roster);
    else
    {
        if (nodes == 0 || nodes > 0xffff)
            throw UsageError("--nodes must be within 1..65535");
        for (unsigned i = 1; i <= nodes; ++i)
            ids.insert(static_cast<std::uint16_t>(i));
    }

    std::error_code ec;
    fs::create_directories(outDir, ec);
    if (ec)
        throw UsageError("cannot create " + outDir.string() + ": " + ec.message());

    auto [params, master] = ibe::Setup(ibe::SecurityConfig::ForProfile(profile, seed));
    WriteBytes(outDir / "params.bin", ibe::SerializeParams(params));
    WriteBytes(outDir / "master.key", ibe::SerializeMasterKey(master));
    ids.insert(protocol::kBaseStationAddress);
    for (std::uint16_t id : ids)
    {
        ibe::PrivateKey key = ibe::Extract(params, master, protocol::IdentityForAddress(id));
        WriteBytes(outDir / (key.identity + ".key"), ibe::SerializePrivateKey(key));
    }
    std::cout << "wrote params, master key and " << ids.size() << " private keys to " << outDir.string() << '\n';
    return kExitOk;
}

int Run(const std::string &scenarioArg, std::optional<std::uint64_t> seed, const std::string &outDir,
        const std::string &constantsFile, bool verbose)
{
    sim::Scenario scenario = sim::LoadScenario(ResolveScenario(scenarioArg));
    sim::SimOptions options;
    options.seed = seed;
    if (verbose)
        options.verbose = &std::cerr;
    if (!constantsFile.empty())
    {
        try
        {
            options.constants = energy::EnergyConstants::LoadFile(constantsFile);
        }
        catch (const std::exception &e)
        {
            throw UsageError("energy constants: " + std::string(e.what()));
        }
    }

    sim::SimResult result = sim::Run(scenario, options);
    std::string report = result.summary.RenderText();
    if (!outDir.empty())
    {
        std::error_code ec;
        fs::create_directories(outDir, ec);
        if (ec)
            throw UsageError("cannot create " + outDir + ": " + ec.message());
        std::string log;
        for (const std::string &line : result.log)
            log += line + '\n';
        WriteFile(fs::path(outDir) / "events.jsonl", log);
        WriteFile(fs::path(outDir) / "report.txt", report);
        WriteFile(fs::path(outDir) / "report.csv", result.summary.RenderCsv());
    }
    std::cout << report;
    return kExitOk;
}

int Report(const fs::path &in, bool csv)
{
    fs::path log = fs::is_directory(in) ? in / "events.jsonl" : in;
    if (!fs::exists(log))
        throw UsageError("event log not found: " + log.string());
    sim::SimSummary summary;
    try
    {
        summary = sim::SummarizeLog(sim::ReadLog(log));
    }
    catch (const DecodeError &e)
    {
        throw UsageError(e.what());
    }
    std::cout << (csv ? summary.RenderCsv() : summary.RenderText());
    return kExitOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"IBE-Trust sensor network simulator"};
    app.require_subcommand(1);

    std::string profile = "toy";
    std::string outDir;
    unsigned nodes = 3;
    std::string roster;
    std::uint64_t keySeed = 1;
    auto *keygen = app.add_subcommand("keygen", "Run setup and extract keys for a roster");
    keygen->add_option("--profile", profile, "Parameter profile: toy or demo")->required();
    keygen->add_option("--out-dir", outDir, "Directory for params.bin, master.key and <identity>.key")->required();
    keygen->add_option("--nodes", nodes, "Roster of ids 1..N")->capture_default_str();
    keygen->add_option("--roster", roster, "Comma-separated node ids (overrides --nodes)");
    keygen->add_option("--seed", keySeed, "Setup seed")->capture_default_str();

    std::string scenario;
    std::optional<std::uint64_t> runSeed;
    std::string runOut;
    std::string constants;
    bool verbose = false;
    auto *run = app.add_subcommand("run", "Run a scenario and write the report and event log");
    run->add_option("--scenario", scenario, "Scenario file, or the name of a bundled scenario")->required();
    run->add_option("--seed", runSeed, "Overrides the scenario seed");
    run->add_option("--out", runOut, "Output directory for events.jsonl, report.txt and report.csv");
    run->add_option("--constants", constants, "Energy constants file (overrides the scenario)");
    run->add_flag("--verbose", verbose, "Stream events to stderr as they happen");

    std::string input;
    bool csv = false;
    auto *report = app.add_subcommand("report", "Re-render the report from a saved event log");
    report->add_option("--in", input, "events.jsonl, or a run output directory")->required();
    report->add_flag("--csv", csv, "Print CSV instead of text tables");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kExitUsage;
    }

    try
    {
        if (keygen->parsed())
            return Keygen(profile, outDir, nodes, roster, keySeed);
        if (run->parsed())
            return Run(scenario, runSeed, runOut, constants, verbose);
        return Report(input, csv);
    }
    catch (const UsageError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const sim::ScenarioError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const std::exception &e)
    {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
