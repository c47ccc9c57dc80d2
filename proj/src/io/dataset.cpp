#include "csb/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "csb/io.hpp"

namespace csb {

CellIndex build_cell_index(const Dataset& data) {
    CellIndex index;
    index.cell_of_row.resize(data.rows.size());
    std::map<std::tuple<double, long long, std::vector<long long>>, int> seen;
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        const Observation& o = data.rows[i];
        auto key = std::make_tuple(o.mu, o.base_price_cents, o.price_cents);
        auto it = seen.find(key);
        int cell;
        if (it == seen.end()) {
            cell = static_cast<int>(index.mus.size());
            seen.emplace(std::move(key), cell);
            index.mus.push_back(o.mu);
            index.base_prices.push_back(static_cast<double>(o.base_price_cents) / 100.0);
            index.menus.push_back(data.menu(o));
            index.counts.emplace_back(data.feasible.size(), 0);
            index.cell_totals.push_back(0);
        } else {
            cell = it->second;
        }
        index.cell_of_row[i] = cell;
        ++index.counts[cell][o.choice];
        ++index.cell_totals[cell];
    }
    return index;
}

std::vector<std::vector<double>> empirical_choice_probs(const CellIndex& index,
                                                        int n_alternatives) {
    std::vector<std::vector<double>> probs(index.n_cells(),
                                           std::vector<double>(n_alternatives, 0.0));
    for (int j = 0; j < index.n_cells(); ++j)
        for (int c = 0; c < n_alternatives; ++c)
            probs[j][c] = static_cast<double>(index.counts[j][c]) /
                          static_cast<double>(index.cell_totals[j]);
    return probs;
}

long long parse_cents(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw std::invalid_argument("empty currency field");
    bool neg = false;
    std::size_t pos = 0;
    if (s[0] == '-') {
        neg = true;
        pos = 1;
    }
    long long dollars = 0, cents = 0;
    bool in_frac = false;
    int frac_digits = 0;
    for (; pos < s.size(); ++pos) {
        const char ch = s[pos];
        if (ch == '.') {
            if (in_frac) throw std::invalid_argument("bad currency: " + text);
            in_frac = true;
            continue;
        }
        if (ch < '0' || ch > '9') throw std::invalid_argument("bad currency: " + text);
        if (!in_frac) {
            dollars = dollars * 10 + (ch - '0');
        } else if (frac_digits < 2) {
            cents = cents * 10 + (ch - '0');
            ++frac_digits;
        } else if (ch != '0') {
            throw std::invalid_argument("sub-cent currency: " + text);
        }
    }
    if (frac_digits == 1) cents *= 10;
    const long long total = dollars * 100 + cents;
    return neg ? -total : total;
}

std::string format_cents(long long cents) {
    char buf[32];
    const long long a = cents < 0 ? -cents : cents;
    std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", cents < 0 ? "-" : "", a / 100, a % 100);
    return buf;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Dataset ingest(const std::string& path, const FeasibleSet& feasible,
               const std::optional<PricingRule>& rule, const IngestOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ingest: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("ingest: empty file " + path);
    const std::vector<std::string> header = split_csv(line);
    const int n = feasible.size();

    auto col = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    };
    const int c_id = col("id"), c_choice = col("choice"), c_mu = col("mu"),
              c_pbar = col("base_price");
    if (c_id < 0 || c_choice < 0 || c_mu < 0 || c_pbar < 0)
        throw std::runtime_error("ingest: header must contain id, choice, mu, base_price");
    std::vector<int> c_price(n, -1);
    bool have_prices = true;
    for (int c = 0; c < n; ++c) {
        c_price[c] = col("price_" + std::to_string(static_cast<long long>(feasible.amount(c))));
        if (c_price[c] < 0) have_prices = false;
    }
    if (!have_prices && !rule)
        throw std::runtime_error("ingest: need per-alternative price columns or a pricing rule");
    const int c_truth_nu = col("truth_nu"), c_truth_set = col("truth_set");

    Dataset data;
    data.feasible = feasible;
    data.rule = rule;
    data.has_truth = c_truth_nu >= 0;

    std::vector<std::string> bad;
    long long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> f = split_csv(line);
        try {
            Observation o;
            o.id = std::stoll(f.at(c_id));
            const double amount = std::stod(f.at(c_choice));
            o.choice = feasible.index_of_amount(amount);
            if (o.choice < 0) throw std::invalid_argument("choice not in the feasible set");
            o.mu = std::stod(f.at(c_mu));
            if (options.round_mu_half_percent) o.mu = std::round(o.mu * 200.0) / 200.0;
            if (!(o.mu > 0.0 && o.mu < 1.0)) throw std::invalid_argument("mu outside (0,1)");
            o.base_price_cents = parse_cents(f.at(c_pbar));
            if (options.round_base_price_to_5)
                o.base_price_cents = 500 * ((o.base_price_cents + 250) / 500);
            if (have_prices) {
                o.price_cents.resize(n);
                for (int c = 0; c < n; ++c) o.price_cents[c] = parse_cents(f.at(c_price[c]));
                if (rule) {
                    for (int c = 0; c < n; ++c) {
                        const long long derived = std::llround(
                            rule->price(c, static_cast<double>(o.base_price_cents) / 100.0) * 100.0);
                        if (std::llabs(derived - o.price_cents[c]) > 1)
                            throw std::invalid_argument("menu inconsistent with the pricing rule");
                    }
                    o.price_cents.clear();  // rule-derived from here on
                }
            }
            if (c_truth_nu >= 0 && !f.at(c_truth_nu).empty()) o.truth_nu = std::stod(f.at(c_truth_nu));
            if (c_truth_set >= 0 && !f.at(c_truth_set).empty()) {
                std::stringstream ss(f.at(c_truth_set));
                std::string part;
                while (std::getline(ss, part, '|')) o.truth_set.push_back(std::stoi(part));
            }
            data.rows.push_back(std::move(o));
        } catch (const std::exception& e) {
            bad.push_back("line " + std::to_string(line_no) + ": " + e.what());
            if (bad.size() > 20) break;
        }
    }
    if (!bad.empty()) {
        std::string msg = "ingest: schema violations\n";
        for (const auto& b : bad) msg += "  " + b + "\n";
        throw std::runtime_error(msg);
    }
    if (data.rows.empty()) throw std::runtime_error("ingest: no observations in " + path);
    return data;
}

void serialize(const Dataset& data, const std::string& path, bool include_truth) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("serialize: cannot write " + path);
    const int n = data.feasible.size();
    out << "id,choice,mu,base_price";
    for (int c = 0; c < n; ++c)
        out << ",price_" << static_cast<long long>(data.feasible.amount(c));
    if (include_truth && data.has_truth) out << ",truth_nu,truth_set";
    out << "\n";
    for (const Observation& o : data.rows) {
        out << o.id << ',' << static_cast<long long>(data.feasible.amount(o.choice)) << ','
            << format_double(o.mu) << ',' << format_cents(o.base_price_cents);
        for (int c = 0; c < n; ++c) {
            const long long cents = o.price_cents.empty()
                                        ? std::llround(data.price(o, c) * 100.0)
                                        : o.price_cents[c];
            out << ',' << format_cents(cents);
        }
        if (include_truth && data.has_truth) {
            out << ',' << format_double(o.truth_nu) << ',';
            for (std::size_t k = 0; k < o.truth_set.size(); ++k) {
                if (k) out << '|';
                out << o.truth_set[k];
            }
        }
        out << "\n";
    }
}

}  // namespace csb
