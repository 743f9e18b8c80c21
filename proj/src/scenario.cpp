#include "zariski/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <sstream>

namespace zariski {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

/// Items separated by commas and/or whitespace.
std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty())
                out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty())
        out.push_back(std::move(cur));
    return out;
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;)
        out.push_back(w);
    return out;
}

struct TaskRule {
    std::vector<std::string> required;
    std::vector<std::string> optional;
};

const std::map<std::string, TaskRule>& task_rules() {
    static const std::map<std::string, TaskRule> rules{
        {"intersection_matrix", {{"cluster"}, {}}},
        {"proximity_matrix", {{"cluster"}, {}}},
        {"negative_definite", {{"cluster"}, {}}},
        {"values", {{"cluster", "element"}, {}}},
        {"unload", {{"divisor"}, {}}},
        {"nef_envelope", {{"divisor"}, {}}},
        {"degree_function", {{"divisor", "element"}, {}}},
        {"multiplicity", {{"filtration"}, {"nmax"}}},
        {"degree_limits", {{"filtration"}, {"nmax", "valuations"}}},
        {"sequence", {{"filtration"}, {"nmax", "valuations"}}},
        {"commutation", {{"filtration", "element"}, {"nmax", "reduced"}}},
        {"rees_union", {{"filtration"}, {"nmax"}}},
        {"graded_law", {{"filtration"}, {"nmax"}}},
    };
    return rules;
}

enum class Section { none, cluster, divisor, element, filtration, task };

class Parser {
public:
    Scenario parse(std::string_view text) {
        std::size_t line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t end = std::min(text.find('\n', start), text.size());
            std::string_view line = text.substr(start, end - start);
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (!line.empty())
                handle(line, line_no);
            start = end + 1;
        }
        close(line_no);
        if (out_.tasks.empty())
            out_.warnings.push_back("scenario defines no tasks");
        return std::move(out_);
    }

private:
    void handle(std::string_view line, std::size_t n) {
        try {
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ScenarioError("unterminated section header", n);
                close(n);
                open(trim(line.substr(1, line.size() - 2)), n);
                return;
            }
            if (section_ == Section::task && compact_task(line, n))
                return;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ScenarioError("expected key = value", n);
            const std::string_view key = trim(line.substr(0, eq));
            const std::string_view value = trim(line.substr(eq + 1));
            if (!is_identifier(key))
                throw ScenarioError("bad key '" + std::string(key) + "'", n);
            entry(std::string(key), value, n);
        } catch (const ScenarioError&) {
            throw;
        } catch (const Error& e) {
            throw ScenarioError(e.what(), n);
        }
    }

    void define(const std::string& name, std::size_t n) {
        if (!is_identifier(name))
            throw ScenarioError("bad name '" + name + "'", n);
        if (!names_.insert(name).second)
            throw ScenarioError("'" + name + "' is already defined", n);
    }

    void open(std::string_view header, std::size_t n) {
        const auto words = split_words(header);
        if (words.empty())
            throw ScenarioError("empty section header", n);
        const std::string& kind = words[0];
        section_line_ = n;
        keys_.clear();
        if (kind == "task") {
            if (words.size() != 1)
                throw ScenarioError("[task] takes no name", n);
            section_ = Section::task;
            return;
        }
        if (kind == "divisor") {
            if (words.size() != 4 || words[2] != "on")
                throw ScenarioError("expected [divisor NAME on CLUSTER]", n);
            if (!out_.clusters.count(words[3]))
                throw ScenarioError("undefined cluster '" + words[3] + "'", n);
            define(words[1], n);
            name_ = words[1];
            divisor_cluster_ = words[3];
            coefficients_.reset();
            section_ = Section::divisor;
            return;
        }
        if (words.size() != 2)
            throw ScenarioError("expected [" + kind + " NAME]", n);
        if (kind == "cluster") {
            section_ = Section::cluster;
            cluster_ = Cluster{};
            point_names_.clear();
        } else if (kind == "element") {
            section_ = Section::element;
            element_.reset();
        } else if (kind == "filtration") {
            section_ = Section::filtration;
            fields_.clear();
        } else {
            throw ScenarioError("unknown section '" + kind + "'", n);
        }
        define(words[1], n);
        name_ = words[1];
    }

    void entry(const std::string& key, std::string_view value, std::size_t n) {
        if (section_ == Section::none)
            throw ScenarioError("key '" + key + "' outside any section", n);
        if (section_ == Section::task) {
            task_arg(key, std::string(value), n);
            return;
        }
        if (!keys_.insert(key).second)
            throw ScenarioError("duplicate key '" + key + "'", n);
        switch (section_) {
            case Section::cluster:
                point(key, value, n);
                break;
            case Section::divisor:
                if (key != "coefficients")
                    throw ScenarioError("unknown divisor key '" + key + "'", n);
                coefficients_.emplace();
                for (const auto& item : split_list(value))
                    coefficients_->push_back(parse_rational(item));
                break;
            case Section::element:
                if (key != "poly")
                    throw ScenarioError("unknown element key '" + key + "'", n);
                element_.emplace(parse_poly(value));
                break;
            case Section::filtration:
                if (key != "kind" && key != "divisor" && key != "params" && key != "terms")
                    throw ScenarioError("unknown filtration key '" + key + "'", n);
                fields_[key] = {std::string(value), n};
                break;
            default:
                break;
        }
    }

    void point(const std::string& name, std::string_view value, std::size_t n) {
        static const std::regex shape(R"(^(origin|free|satellite)\s*(?:\((.*)\))?$)");
        std::cmatch m;
        const std::string text(value);
        if (!std::regex_match(text.c_str(), m, shape))
            throw ScenarioError("expected origin, free(P[, t]) or satellite(P, Q)", n);
        const std::string what = m[1];
        const auto args = m[2].matched ? split_list(m[2].str()) : std::vector<std::string>{};
        auto index_of = [&](const std::string& p) {
            const auto it = std::find(point_names_.begin(), point_names_.end(), p);
            if (it == point_names_.end())
                throw ScenarioError("undefined point '" + p + "'", n);
            return static_cast<PointIndex>(it - point_names_.begin());
        };
        if (!is_identifier(name) || std::count(point_names_.begin(), point_names_.end(), name))
            throw ScenarioError("bad or repeated point name '" + name + "'", n);
        if (what == "origin") {
            if (!args.empty())
                throw ScenarioError("origin takes no arguments", n);
            if (!cluster_.empty())
                throw ScenarioError("the origin must be the first point", n);
            cluster_.add_origin();
        } else if (cluster_.empty()) {
            throw ScenarioError("the first point must be the origin", n);
        } else if (what == "free") {
            if (args.empty() || args.size() > 2)
                throw ScenarioError("expected free(P) or free(P, t)", n);
            std::optional<Param> t;
            if (args.size() == 2)
                t = Param::parse(args[1]);
            cluster_.add_free_point(index_of(args[0]), t);
        } else {
            if (args.size() != 2)
                throw ScenarioError("expected satellite(P, Q)", n);
            cluster_.add_satellite_point(index_of(args[0]), index_of(args[1]));
        }
        point_names_.push_back(name);
    }

    bool compact_task(std::string_view line, std::size_t n) {
        const auto words = split_words(line);
        if (!is_identifier(words[0]) || (words.size() > 1 && words[1].front() == '='))
            return false;
        finish_task();
        task_ = Task{words[0], {}, n};
        for (std::size_t i = 1; i < words.size(); ++i) {
            const auto eq = words[i].find('=');
            if (eq == std::string::npos || eq == 0)
                throw ScenarioError("expected key=value, got '" + words[i] + "'", n);
            task_arg(words[i].substr(0, eq), words[i].substr(eq + 1), n);
        }
        return true;
    }

    void task_arg(const std::string& key, std::string value, std::size_t n) {
        if (!task_)
            task_ = Task{"", {}, n};
        if (key == "kind") {
            if (!task_->kind.empty())
                throw ScenarioError("task kind given twice", n);
            task_->kind = std::move(value);
            return;
        }
        if (task_->find(key))
            throw ScenarioError("duplicate task argument '" + key + "'", n);
        task_->args.emplace_back(key, std::move(value));
    }

    void finish_task() {
        if (!task_)
            return;
        Task t = std::move(*task_);
        task_.reset();
        const std::size_t n = t.line;
        if (t.kind.empty())
            throw ScenarioError("task without a kind", n);
        const auto rule = task_rules().find(t.kind);
        if (rule == task_rules().end())
            throw ScenarioError("unknown task kind '" + t.kind + "'", n);
        for (const auto& key : rule->second.required)
            if (!t.find(key))
                throw ScenarioError(t.kind + " needs " + key + "=", n);
        for (const auto& [key, value] : t.args) {
            const auto& r = rule->second;
            if (std::find(r.required.begin(), r.required.end(), key) == r.required.end() &&
                std::find(r.optional.begin(), r.optional.end(), key) == r.optional.end())
                throw ScenarioError(t.kind + " does not take " + key + "=", n);
            auto require = [&](const auto& map, const char* what) {
                if (!map.count(value))
                    throw ScenarioError(std::string("undefined ") + what + " '" + value + "'", n);
            };
            if (key == "cluster")
                require(out_.clusters, "cluster");
            else if (key == "divisor")
                require(out_.divisors, "divisor");
            else if (key == "element")
                require(out_.elements, "element");
            else if (key == "filtration")
                require(out_.filtrations, "filtration");
            else if (key == "nmax") {
                if (value.empty() || value.size() > 7 || !std::all_of(value.begin(), value.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
                    std::stoul(value) == 0)
                    throw ScenarioError("nmax must be a positive integer", n);
            } else if (key == "reduced") {
                if (value != "true" && value != "false")
                    throw ScenarioError("reduced must be true or false", n);
            } else if (key == "valuations") {
                try {
                    for (const auto& label : split_list(value))
                        parse_valuation_label(label);
                } catch (const DomainError& e) {
                    throw ScenarioError(e.what(), n);
                }
            }
        }
        out_.tasks.push_back(std::move(t));
    }

    void close(std::size_t n) {
        switch (section_) {
            case Section::cluster:
                out_.clusters.emplace(name_, NamedCluster{share(std::move(cluster_)), point_names_});
                break;
            case Section::divisor: {
                if (!coefficients_)
                    throw ScenarioError("divisor '" + name_ + "' has no coefficients", section_line_);
                const auto& c = out_.clusters.at(divisor_cluster_).cluster;
                if (coefficients_->size() != c->size())
                    throw ScenarioError("divisor '" + name_ + "' has " + std::to_string(coefficients_->size()) +
                                            " coefficients but cluster '" + divisor_cluster_ + "' has " +
                                            std::to_string(c->size()) + " curves",
                                        section_line_);
                out_.divisors.emplace(name_, ExcDivisor(c, std::move(*coefficients_)));
                break;
            }
            case Section::element:
                if (!element_)
                    throw ScenarioError("element '" + name_ + "' has no poly", section_line_);
                out_.elements.emplace(name_, std::move(*element_));
                break;
            case Section::filtration:
                out_.filtrations.emplace(name_, filtration());
                break;
            case Section::task:
                finish_task();
                break;
            case Section::none:
                break;
        }
        section_ = Section::none;
        (void)n;
    }

    FiltrationSpec filtration() {
        auto field = [&](const std::string& key) -> const std::pair<std::string, std::size_t>* {
            const auto it = fields_.find(key);
            return it == fields_.end() ? nullptr : &it->second;
        };
        const auto* kind = field("kind");
        if (!kind)
            throw ScenarioError("filtration '" + name_ + "' has no kind", section_line_);
        auto only = [&](std::initializer_list<const char*> allowed) {
            for (const auto& [key, v] : fields_)
                if (key != "kind" &&
                    std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
                    throw ScenarioError(kind->first + " filtrations do not take " + key + "=", v.second);
        };
        auto divisor = [&](const std::string& name, std::size_t line) {
            const auto it = out_.divisors.find(name);
            if (it == out_.divisors.end())
                throw ScenarioError("undefined divisor '" + name + "'", line);
            return it->second;
        };
        std::optional<FiltrationSpec> spec;
        std::size_t line = kind->second;
        if (kind->first == "qdivisorial") {
            only({"divisor"});
            const auto* d = field("divisor");
            if (!d)
                throw ScenarioError("qdivisorial filtration needs divisor=", kind->second);
            spec = QDivisorialSpec{divisor(d->first, d->second)};
            line = d->second;
        } else if (kind->first == "example42" || kind->first == "star") {
            only({"params"});
            StarFamilySpec s;
            if (const auto* p = field("params")) {
                for (const auto& t : split_list(p->first))
                    s.params.push_back(Param::parse(t));
                if (s.params.empty())
                    throw ScenarioError("params= needs at least one value", p->second);
                line = p->second;
            }
            spec = std::move(s);
        } else if (kind->first == "explicit") {
            only({"terms"});
            const auto* t = field("terms");
            if (!t)
                throw ScenarioError("explicit filtration needs terms=", kind->second);
            ExplicitSpec e;
            for (const auto& name : split_list(t->first))
                e.table.push_back(divisor(name, t->second));
            if (e.table.empty())
                throw ScenarioError("terms= needs at least one divisor", t->second);
            spec = std::move(e);
            line = t->second;
        } else {
            throw ScenarioError("unknown filtration kind '" + kind->first + "'", kind->second);
        }
        try {
            validate(*spec);
        } catch (const DomainError& e) {
            throw ScenarioError(e.what(), line);
        }
        return std::move(*spec);
    }

    Scenario out_;
    std::set<std::string> names_;
    Section section_ = Section::none;
    std::size_t section_line_ = 0;
    std::string name_;
    std::set<std::string> keys_;

    Cluster cluster_;
    std::vector<std::string> point_names_;
    std::string divisor_cluster_;
    std::optional<RationalVector> coefficients_;
    std::optional<PlaneElement> element_;
    std::map<std::string, std::pair<std::string, std::size_t>> fields_;
    std::optional<Task> task_;
};

}  // namespace

const std::string* Task::find(std::string_view key) const {
    for (const auto& [k, v] : args)
        if (k == key)
            return &v;
    return nullptr;
}

std::string Task::describe() const {
    std::string s = kind;
    for (const auto& [k, v] : args) {
        s += ' ';
        s += k;
        s += '=';
        const auto items = split_list(v);
        for (std::size_t i = 0; i < items.size(); ++i)
            s += (i ? "," : "") + items[i];
    }
    return s;
}

const std::vector<std::string>& task_kinds() {
    static const std::vector<std::string> kinds = [] {
        std::vector<std::string> k;
        for (const auto& [name, rule] : task_rules())
            k.push_back(name);
        return k;
    }();
    return kinds;
}

Scenario parse_scenario(std::string_view text) { return Parser{}.parse(text); }

}  // namespace zariski
