#include "plmu/plts.hpp"

#include "plmu/errors.hpp"
#include "plmu/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace plmu {

std::optional<uint32_t> Plts::stateIndex(std::string_view name) const {
    for (uint32_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return i;
    return std::nullopt;
}

std::optional<uint32_t> Plts::labelIndex(std::string_view name) const {
    for (uint32_t i = 0; i < labels.size(); ++i)
        if (labels[i] == name) return i;
    return std::nullopt;
}

void Plts::validate() const {
    std::set<std::string> seen;
    for (const auto& s : states)
        if (!seen.insert(s).second)
            throw ValidationError("duplicate state id '" + s + "'");
    seen.clear();
    for (const auto& l : labels)
        if (!seen.insert(l).second)
            throw ValidationError("duplicate label '" + l + "'");
    if (trans.size() != states.size())
        throw ValidationError("transition table does not cover all states");
    for (const auto& row : trans) {
        if (row.size() != labels.size())
            throw ValidationError("transition table does not cover all labels");
        for (const auto& ids : row)
            for (uint32_t id : ids)
                if (id >= dists.size())
                    throw ValidationError("transition references unknown distribution");
    }
    for (size_t i = 0; i < dists.size(); ++i) {
        const Distribution& d = dists[i];
        if (d.entries.empty())
            throw ValidationError("distribution " + std::to_string(i) + " is empty");
        std::set<uint32_t> support;
        double sum = 0.0;
        for (const auto& e : d.entries) {
            if (e.state >= states.size())
                throw ValidationError("distribution " + std::to_string(i) +
                                      " mentions unknown state");
            if (!support.insert(e.state).second)
                throw ValidationError("distribution " + std::to_string(i) +
                                      " repeats state '" + states[e.state] + "'");
            if (!(e.w > 0.0))
                throw ValidationError("distribution " + std::to_string(i) +
                                      " has non-positive weight on '" + states[e.state] + "'");
            sum += e.w;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw ValidationError("distribution " + std::to_string(i) + " sums to " +
                                  fmtDouble(sum) + ", not 1");
    }
}

std::string fmtDouble(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

struct LineReader {
    std::string line;
    int lineNo = 0;

    // Splits off comments and trims; returns false when the line is blank.
    static bool strip(std::string& s) {
        if (size_t h = s.find('#'); h != std::string::npos) s.erase(h);
        size_t b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) { s.clear(); return false; }
        size_t e = s.find_last_not_of(" \t\r");
        s = s.substr(b, e - b + 1);
        return true;
    }
};

std::vector<std::string> splitWords(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

// Parses "n/d" or a decimal; returns value and keeps the source spelling.
double parseProb(const std::string& tok, int lineNo) {
    if (size_t slash = tok.find('/'); slash != std::string::npos) {
        std::string ns = tok.substr(0, slash), ds = tok.substr(slash + 1);
        long long n = 0, d = 0;
        auto rn = std::from_chars(ns.data(), ns.data() + ns.size(), n);
        auto rd = std::from_chars(ds.data(), ds.data() + ds.size(), d);
        if (rn.ec != std::errc() || rn.ptr != ns.data() + ns.size() ||
            rd.ec != std::errc() || rd.ptr != ds.data() + ds.size() || d == 0)
            throw ParseError("bad rational '" + tok + "'", lineNo, 1);
        return static_cast<double>(n) / static_cast<double>(d);
    }
    double v = 0.0;
    auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
        throw ParseError("bad probability '" + tok + "'", lineNo, 1);
    return v;
}

} // namespace

Plts loadPlts(const std::string& text) {
    Plts m;
    bool sawStates = false, sawLabels = false;
    std::istringstream is(text);
    std::string raw;
    int lineNo = 0;
    while (std::getline(is, raw)) {
        ++lineNo;
        if (!LineReader::strip(raw)) continue;
        if (raw.rfind("states:", 0) == 0) {
            if (sawStates) throw ParseError("duplicate states: line", lineNo, 1);
            sawStates = true;
            for (const auto& w : splitWords(raw.substr(7))) m.states.push_back(w);
            continue;
        }
        if (raw.rfind("labels:", 0) == 0) {
            if (sawLabels) throw ParseError("duplicate labels: line", lineNo, 1);
            sawLabels = true;
            for (const auto& w : splitWords(raw.substr(7))) m.labels.push_back(w);
            continue;
        }
        if (raw.rfind("trans", 0) == 0) {
            if (!sawStates || !sawLabels)
                throw ParseError("trans before states:/labels:", lineNo, 1);
            if (m.trans.empty())
                m.trans.assign(m.states.size(),
                               std::vector<std::vector<uint32_t>>(m.labels.size()));
            size_t brace = raw.find('{');
            if (brace == std::string::npos || raw.back() != '}')
                throw ParseError("trans line needs '{ ... }'", lineNo, 1);
            auto head = splitWords(raw.substr(5, brace - 5));
            if (head.size() != 2)
                throw ParseError("trans line needs source state and label", lineNo, 1);
            auto src = m.stateIndex(head[0]);
            if (!src) throw ParseError("unknown state '" + head[0] + "'", lineNo, 1);
            auto lab = m.labelIndex(head[1]);
            if (!lab) throw ParseError("unknown label '" + head[1] + "'", lineNo, 1);

            Distribution d;
            std::string body = raw.substr(brace + 1, raw.size() - brace - 2);
            std::istringstream bs(body);
            std::string item;
            while (std::getline(bs, item, ',')) {
                size_t colon = item.find(':');
                if (colon == std::string::npos)
                    throw ParseError("weight entry needs 'state: prob'", lineNo, 1);
                std::string sn = item.substr(0, colon), pv = item.substr(colon + 1);
                LineReader::strip(sn);
                LineReader::strip(pv);
                auto tgt = m.stateIndex(sn);
                if (!tgt) throw ParseError("unknown state '" + sn + "'", lineNo, 1);
                double w = parseProb(pv, lineNo);
                d.entries.push_back({*tgt, w, pv});
            }
            m.dists.push_back(std::move(d));
            m.trans[*src][*lab].push_back(static_cast<uint32_t>(m.dists.size() - 1));
            continue;
        }
        throw ParseError("unrecognized line '" + raw + "'", lineNo, 1);
    }
    if (!sawStates) throw ParseError("missing states: line", lineNo, 1);
    if (!sawLabels) throw ParseError("missing labels: line", lineNo, 1);
    if (m.trans.empty())
        m.trans.assign(m.states.size(), std::vector<std::vector<uint32_t>>(m.labels.size()));
    m.validate();
    return m;
}

std::string savePlts(const Plts& m) {
    std::string out = "states:";
    for (const auto& s : m.states) { out += ' '; out += s; }
    out += "\nlabels:";
    for (const auto& l : m.labels) { out += ' '; out += l; }
    out += '\n';
    for (uint32_t s = 0; s < m.trans.size(); ++s) {
        for (uint32_t l = 0; l < m.trans[s].size(); ++l) {
            for (uint32_t id : m.trans[s][l]) {
                out += "trans " + m.states[s] + " " + m.labels[l] + " { ";
                const Distribution& d = m.dists[id];
                for (size_t i = 0; i < d.entries.size(); ++i) {
                    const auto& e = d.entries[i];
                    if (i) out += ", ";
                    out += m.states[e.state] + ": " +
                           (e.display.empty() ? fmtDouble(e.w) : e.display);
                }
                out += " }\n";
            }
        }
    }
    return out;
}

bool isNonProbabilistic(const Plts& m) {
    for (const auto& d : m.dists)
        if (d.entries.size() != 1) return false;
    return true;
}

Plts randomPlts(uint64_t seed, uint32_t nStates, uint32_t nLabels, uint32_t maxChoices,
                uint32_t maxSupport) {
    Rng rng(mix64(seed, 0x706c7473ULL));
    Plts m;
    for (uint32_t i = 0; i < nStates; ++i) m.states.push_back("s" + std::to_string(i));
    for (uint32_t i = 0; i < nLabels; ++i) m.labels.push_back("a" + std::to_string(i));
    m.trans.assign(nStates, std::vector<std::vector<uint32_t>>(nLabels));
    uint32_t supCap = std::min(maxSupport, nStates);
    for (uint32_t s = 0; s < nStates; ++s) {
        for (uint32_t l = 0; l < nLabels; ++l) {
            uint32_t k = static_cast<uint32_t>(rng.below(maxChoices + 1));
            for (uint32_t c = 0; c < k; ++c) {
                uint32_t supportSize = 1 + static_cast<uint32_t>(rng.below(supCap));
                // draw distinct target states
                std::vector<uint32_t> targets;
                while (targets.size() < supportSize) {
                    uint32_t t = static_cast<uint32_t>(rng.below(nStates));
                    if (std::find(targets.begin(), targets.end(), t) == targets.end())
                        targets.push_back(t);
                }
                std::vector<uint32_t> numer(supportSize);
                uint32_t total = 0;
                for (auto& n : numer) { n = 1 + static_cast<uint32_t>(rng.below(9)); total += n; }
                Distribution d;
                for (uint32_t i = 0; i < supportSize; ++i) {
                    double w = static_cast<double>(numer[i]) / total;
                    d.entries.push_back({targets[i], w,
                                         std::to_string(numer[i]) + "/" + std::to_string(total)});
                }
                m.dists.push_back(std::move(d));
                m.trans[s][l].push_back(static_cast<uint32_t>(m.dists.size() - 1));
            }
        }
    }
    m.validate();
    return m;
}

} // namespace plmu
