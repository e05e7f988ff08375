#pragma once

// Claims manifest: one JSON object per line,
//   {"claim": id, "locus": text, "cmd": args, "expect": value, "tol": number|null, "field": "/json/pointer"?}
// Each command runs against the CLI binary. With "field" the output is parsed
// as JSON and the pointed-to value is compared; otherwise the trimmed output
// must begin with `expect` followed by whitespace or the end. A numeric "tol"
// compares |value - expect| <= tol.

#include <nlohmann/json.hpp>

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace randsurf::verify {

struct ClaimEntry {
    std::string claim;
    std::string locus;
    std::string cmd;
    nlohmann::json expect;
    std::optional<double> tol;
    std::string field;
};

struct ClaimOutcome {
    ClaimEntry entry;
    bool passed = false;
    std::string observed;
};

inline std::vector<ClaimEntry> load_manifest(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest " + path);
    std::vector<ClaimEntry> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": not a JSON object");
        ClaimEntry e;
        e.claim = j.at("claim").get<std::string>();
        e.locus = j.value("locus", "");
        e.cmd = j.at("cmd").get<std::string>();
        e.expect = j.at("expect");
        if (j.contains("tol") && j["tol"].is_number()) e.tol = j["tol"].get<double>();
        e.field = j.value("field", "");
        out.push_back(std::move(e));
    }
    return out;
}

/// Runs a shell command, returning (exit status, stdout).
inline std::pair<int, std::string> run_command(const std::string& command)
{
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
    if (!pipe) throw std::runtime_error("cannot run " + command);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe.release());
    return {status, out};
}

inline std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline bool matches(const ClaimEntry& e, const std::string& output, std::string& observed)
{
    nlohmann::json value;
    if (!e.field.empty()) {
        auto doc = nlohmann::json::parse(output, nullptr, false);
        if (doc.is_discarded()) {
            observed = "output is not JSON";
            return false;
        }
        const nlohmann::json::json_pointer ptr(e.field);
        if (!doc.contains(ptr)) {
            observed = "missing field " + e.field;
            return false;
        }
        value = doc.at(ptr);
    } else {
        value = trim(output);
    }
    observed = value.is_string() ? value.get<std::string>() : value.dump();
    if (e.tol) {
        double v = 0, x = 0;
        try {
            v = value.is_number() ? value.get<double>() : std::stod(value.get<std::string>());
            x = e.expect.is_number() ? e.expect.get<double>() : std::stod(e.expect.get<std::string>());
        } catch (const std::exception&) {
            return false;
        }
        return std::abs(v - x) <= *e.tol;
    }
    const std::string want = e.expect.is_string() ? e.expect.get<std::string>() : e.expect.dump();
    if (!e.field.empty()) return observed == want;
    if (observed.compare(0, want.size(), want) != 0) return false;
    return observed.size() == want.size() || std::isspace(static_cast<unsigned char>(observed[want.size()]));
}

inline std::vector<ClaimOutcome> verify_all(const std::vector<ClaimEntry>& manifest, const std::string& binary)
{
    {
        std::ifstream probe(binary);
        if (!probe) throw std::runtime_error("CLI binary not found: " + binary);
    }
    std::vector<ClaimOutcome> out;
    for (const auto& e : manifest) {
        ClaimOutcome o;
        o.entry = e;
        auto [status, text] = run_command("'" + binary + "' " + e.cmd + " 2>&1");
        o.passed = matches(e, text, o.observed);
        if (status != 0 && o.observed.empty()) o.observed = "exit status " + std::to_string(status);
        out.push_back(std::move(o));
    }
    return out;
}

} // namespace randsurf::verify
