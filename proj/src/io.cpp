#include "agg/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace agg {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double parse_double(const std::string& s, const std::string& path, std::size_t line) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ParseError(path, line, "expected a number, got '" + s + "'");
    }
    if (pos != s.size())
        throw ParseError(path, line, "trailing characters after number '" + s + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& s, const std::string& path,
                         std::size_t line) {
    std::size_t pos = 0;
    unsigned long long v;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        throw ParseError(path, line, "expected a nonnegative integer, got '" + s + "'");
    }
    if (pos != s.size())
        throw ParseError(path, line, "trailing characters after integer '" + s + "'");
    return v;
}

// Splits a file into (line_number, content) pairs, dropping blanks and
// '#' comments.
std::vector<std::pair<std::size_t, std::string>> logical_lines(const std::string& text) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::istringstream in(text);
    std::string raw;
    std::size_t num = 0;
    while (std::getline(in, raw)) {
        ++num;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        raw = trim(raw);
        if (!raw.empty()) out.emplace_back(num, raw);
    }
    return out;
}

}  // namespace

ParseError::ParseError(const std::string& path, std::size_t line, const std::string& what)
    : std::runtime_error(path + ":" + std::to_string(line) + ": " + what) {}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

FiniteDistribution load_distribution(const std::string& path) {
    const auto lines = logical_lines(read_file(path));
    std::vector<std::size_t> atoms;
    std::vector<double> masses, etas;
    bool saw_atoms = false, saw_masses = false, saw_etas = false;
    for (const auto& [num, line] : lines) {
        std::istringstream in(line);
        std::string key;
        in >> key;
        std::string tok;
        if (key == "atoms") {
            while (in >> tok) atoms.push_back(parse_uint(tok, path, num));
            saw_atoms = true;
        } else if (key == "masses") {
            while (in >> tok) masses.push_back(parse_double(tok, path, num));
            saw_masses = true;
        } else if (key == "etas") {
            while (in >> tok) etas.push_back(parse_double(tok, path, num));
            saw_etas = true;
        } else {
            throw ParseError(path, num, "unknown key '" + key + "'");
        }
    }
    if (!saw_atoms || !saw_masses || !saw_etas)
        throw ParseError(path, 0, "distribution file needs atoms, masses and etas lines");
    if (atoms.size() != masses.size() || atoms.size() != etas.size())
        throw ParseError(path, 0, "atoms, masses and etas must have equal length");
    for (std::size_t j = 0; j < atoms.size(); ++j)
        if (atoms[j] != j)
            throw ParseError(path, 0, "atom ids must be 0..N-1 in order");
    try {
        return FiniteDistribution(std::move(masses), std::move(etas));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path, 0, e.what());
    }
}

std::string distribution_to_text(const FiniteDistribution& dist) {
    std::string text = "atoms";
    for (std::size_t j = 0; j < dist.n_atoms(); ++j)
        text += " " + std::to_string(j);
    text += "\nmasses";
    for (double p : dist.masses()) text += " " + format_double(p);
    text += "\netas";
    for (double e : dist.etas()) text += " " + format_double(e);
    text += "\n";
    return text;
}

void save_distribution(const FiniteDistribution& dist, const std::string& path) {
    atomic_write(path, distribution_to_text(dist));
}

FunctionClass load_class(const std::string& path) {
    const auto lines = logical_lines(read_file(path));
    std::size_t n_atoms = 0;
    bool saw_atoms = false;
    std::vector<Rule> rules;
    for (const auto& [num, line] : lines) {
        std::istringstream in(line);
        std::string key;
        in >> key;
        std::string tok;
        if (key == "atoms") {
            std::vector<std::size_t> atoms;
            while (in >> tok) atoms.push_back(parse_uint(tok, path, num));
            for (std::size_t j = 0; j < atoms.size(); ++j)
                if (atoms[j] != j)
                    throw ParseError(path, num, "atom ids must be 0..N-1 in order");
            n_atoms = atoms.size();
            saw_atoms = true;
        } else if (key == "rule") {
            std::vector<double> values;
            while (in >> tok) values.push_back(parse_double(tok, path, num));
            if (!saw_atoms || values.size() != n_atoms)
                throw ParseError(path, num, "rule length does not match atoms line");
            try {
                rules.emplace_back(std::move(values));
            } catch (const std::invalid_argument& e) {
                throw ParseError(path, num, e.what());
            }
        } else {
            throw ParseError(path, num, "unknown key '" + key + "'");
        }
    }
    try {
        return FunctionClass(std::move(rules));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path, 0, e.what());
    }
}

void save_class(const FunctionClass& cls, const std::string& path) {
    std::string text = "atoms";
    for (std::size_t j = 0; j < cls.n_atoms(); ++j) text += " " + std::to_string(j);
    text += "\n";
    for (const Rule& r : cls.rules) {
        text += "rule";
        for (double v : r.values()) text += " " + format_double(v);
        text += "\n";
    }
    atomic_write(path, text);
}

LabeledSample load_sample(const std::string& path) {
    const auto lines = logical_lines(read_file(path));
    LabeledSample sample;
    bool saw_n = false;
    std::size_t declared = 0;
    for (const auto& [num, line] : lines) {
        std::istringstream in(line);
        std::string first;
        in >> first;
        if (first == "n") {
            std::string tok;
            in >> tok;
            declared = parse_uint(tok, path, num);
            saw_n = true;
        } else {
            std::string second;
            if (!(in >> second))
                throw ParseError(path, num, "expected 'ATOM LABEL'");
            const std::size_t atom = parse_uint(first, path, num);
            const double label = parse_double(second, path, num);
            if (label != 1.0 && label != -1.0)
                throw ParseError(path, num, "label must be -1 or 1");
            sample.entries.push_back({atom, static_cast<int>(label)});
        }
    }
    if (!saw_n || declared != sample.size())
        throw ParseError(path, 0, "declared n does not match entry count");
    return sample;
}

void save_sample(const LabeledSample& sample, const std::string& path) {
    std::string text = "n " + std::to_string(sample.size()) + "\n";
    for (const auto& e : sample.entries)
        text += std::to_string(e.atom) + " " + std::to_string(e.label) + "\n";
    atomic_write(path, text);
}

void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value) {
    const std::string where = "<override>";
    if (key == "kappa") {
        config.kappa = parse_double(value, where, 0);
    } else if (key == "M") {
        config.M = parse_uint(value, where, 0);
    } else if (key == "n_grid") {
        config.n_grid.clear();
        for (const std::string& tok : split(value, ','))
            config.n_grid.push_back(parse_uint(tok, where, 0));
    } else if (key == "trials") {
        config.trials = parse_uint(value, where, 0);
    } else if (key == "procedures") {
        config.procedures.clear();
        for (const std::string& tok : split(value, ','))
            config.procedures.push_back(parse_procedure(tok));
    } else if (key == "loss") {
        if (value == "hinge")
            config.loss = Loss::hinge_loss();
        else if (value == "zero_one")
            config.loss = Loss::zero_one_loss();
        else
            throw std::invalid_argument("loss must be hinge or zero_one, got '" +
                                        value + "'");
    } else if (key == "distribution") {
        if (value == "cube") {
            config.use_cube = true;
            config.distribution.reset();
        } else {
            config.use_cube = false;
            config.distribution = load_distribution(value);
        }
    } else if (key == "class") {
        if (value == "hypercube") {
            config.function_class.reset();
        } else {
            config.function_class = load_class(value);
        }
    } else if (key == "master_seed") {
        config.master_seed = parse_uint(value, where, 0);
    } else if (key == "output") {
        config.output_path = value;
    } else if (key == "threads") {
        config.threads = static_cast<int>(parse_uint(value, where, 0));
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& path_for_errors) {
    ExperimentConfig config;
    for (const auto& [num, line] : logical_lines(text)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(path_for_errors, num, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            apply_override(config, key, value);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(path_for_errors, num, e.what());
        }
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    return parse_config_text(read_file(path), path);
}

std::string config_to_text(const ExperimentConfig& config) {
    std::string text;
    text += "kappa = " + format_double(config.kappa) + "\n";
    text += "M = " + std::to_string(config.M) + "\n";
    text += "n_grid = ";
    for (std::size_t i = 0; i < config.n_grid.size(); ++i)
        text += (i ? "," : "") + std::to_string(config.n_grid[i]);
    text += "\ntrials = " + std::to_string(config.trials) + "\n";
    text += "procedures = ";
    for (std::size_t i = 0; i < config.procedures.size(); ++i)
        text += std::string(i ? "," : "") + procedure_name(config.procedures[i]);
    text += "\nloss = " + config.loss.name() + "\n";
    text += "distribution = " + std::string(config.use_cube ? "cube" : "<inline>") + "\n";
    text += "class = " +
            std::string(config.function_class ? "<inline>" : "hypercube") + "\n";
    text += "master_seed = " + std::to_string(config.master_seed) + "\n";
    text += "output = " + config.output_path + "\n";
    text += "threads = " + std::to_string(config.threads) + "\n";
    return text;
}

}  // namespace agg
