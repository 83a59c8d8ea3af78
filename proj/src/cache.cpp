#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "fusible/engine.hpp"
#include "fusible/error.hpp"

// Cache file format: one entry per line, three tab-separated fields
//
//   method <TAB> x <TAB> m
//
// with method in {erickson, conjecture, zigzag} and x, m in the fraction
// syntax of parse_rational.  Blank lines and lines starting with '#' are
// ignored.  Loaded entries are distrusted until an evaluation recomputes
// them (see Engine::memo_insert); saving writes every held entry sorted by
// (method, argument) so identical engines produce identical files.

namespace fusible {

void Engine::load_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open cache file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto where = [&] { return path + ":" + std::to_string(lineno); };
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) throw ParseError("cache line needs 3 fields at " + where());
        auto method = method_from_name(std::string_view(line).substr(0, t1));
        if (!method) throw ParseError("unknown cache method at " + where());
        Rational x, m;
        try {
            x = parse_rational(std::string_view(line).substr(t1 + 1, t2 - t1 - 1));
            m = parse_rational(std::string_view(line).substr(t2 + 1));
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + " at " + where());
        }
        MemoMap& map = memo_[index(*method)];
        map.emplace(std::move(x), MemoVal{std::move(m), false});  // keeps an existing entry
        stats_[index(*method)].entries = map.size();
    }
}

void Engine::save_cache(const std::string& path) const {
    std::vector<std::tuple<int, Rational, Rational>> rows;
    for (int i = 0; i < 3; ++i)
        for (const auto& [x, val] : memo_[i]) rows.emplace_back(i, x, val.m);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        return std::get<1>(a) < std::get<1>(b);
    });
    std::ostringstream out;
    for (const auto& [mi, x, m] : rows)
        out << method_name(static_cast<Method>(mi)) << '\t' << format_rational(x) << '\t'
            << format_rational(m) << '\n';
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw Error("cannot write cache file: " + path);
    f << out.str();
    if (!f.flush()) throw Error("failed writing cache file: " + path);
}

}  // namespace fusible
