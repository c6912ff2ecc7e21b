#include "morphfit/morph_rules.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "morphfit/utf8.hpp"

namespace morphfit {

namespace {

bool ends_with(std::u32string_view word, std::u32string_view ending) {
    return word.size() >= ending.size() && word.substr(word.size() - ending.size()) == ending;
}

std::vector<Affix> suffixes(std::initializer_list<const char*> list) {
    std::vector<Affix> out;
    for (const char* s : list) out.push_back({"", s});
    return out;
}

MorphRule append(std::string trigger, std::initializer_list<const char*> variants) {
    return {RuleKind::append_suffixes, std::move(trigger), 0, suffixes(variants), {}};
}

MorphRule strip_append(std::string trigger, std::size_t strip, std::initializer_list<const char*> variants) {
    return {RuleKind::strip_then_append, std::move(trigger), strip, suffixes(variants), {}};
}

MorphRule group(std::string trigger, std::size_t strip, std::vector<Affix> variants,
                std::vector<std::string> excluded = {}) {
    return {RuleKind::suffix_group_cross_product, std::move(trigger), strip, std::move(variants),
            std::move(excluded)};
}

RuleSet english() {
    RuleSet r;
    r.language = Language::en;
    r.attract_rules = {
        append("", {"s", "ed", "ing"}),
        strip_append("e", 1, {"ed", "ing"}),
    };
    r.repel_prefixes = {"dis", "il", "un", "in", "im", "ir", "mis", "non", "anti"};
    r.repel_suffix_swaps = {{"ful", "less"}};
    return r;
}

RuleSet german() {
    RuleSet r;
    r.language = Language::de;
    auto& a = r.attract_rules;
    // declension
    a.push_back(group("", 0, suffixes({"e", "em", "en", "er", "es"})));
    // verbs: infinitive stem w[:-2], t-final stems take the e-inserted endings
    auto weak = suffixes({"e", "st", "t", "te", "test", "tet", "ten"});
    weak.push_back({"ge", "t"});
    a.push_back(group("en", 2, weak, {"ten"}));
    auto dental = suffixes({"e", "st", "et", "ete", "etest", "etet", "eten"});
    dental.push_back({"ge", "et"});
    a.push_back(group("ten", 2, dental));
    // plurals
    for (const char* t : {"ei", "heit", "keit", "schaft", "ung"}) a.push_back(append(t, {"en"}));
    a.push_back(append("in", {"nen"}));
    for (const char* t : {"a", "i", "o", "u", "y"}) a.push_back(append(t, {"s"}));
    a.push_back(append("e", {"n"}));
    a.push_back({RuleKind::umlaut_plural, "", 0, suffixes({"er"}), {}});

    r.repel_prefixes = {"un", "nicht", "anti", "ir", "in", "miss"};
    r.repel_suffix_swaps = {{"voll", "los"}};
    return r;
}

RuleSet italian() {
    RuleSet r;
    r.language = Language::it;
    auto& a = r.attract_rules;
    // plural and gender
    for (const char* t : {"a", "e", "o", "i"}) a.push_back(group(t, 1, suffixes({"a", "e", "o", "i"})));
    a.push_back(strip_append("ga", 1, {"he"}));
    a.push_back(strip_append("ca", 1, {"he"}));
    a.push_back(strip_append("go", 1, {"hi"}));
    // conjugation and past participle
    a.push_back(group("are", 3, suffixes({"iamo", "ate", "ano", "o", "i", "a", "ato", "ata", "ati"})));
    a.push_back(group("ere", 3, suffixes({"iamo", "ete", "ono", "o", "i", "e", "uto", "uta", "uti", "ute"})));
    a.push_back(group("ire", 3, suffixes({"iamo", "ite", "ono", "o", "i", "e", "ito", "ita", "iti"})));

    r.repel_prefixes = {"in", "ir", "im", "anti"};
    return r;
}

RuleSet russian() {
    RuleSet r;
    r.language = Language::ru;
    auto& a = r.attract_rules;
    // plural
    a.push_back(append("", {"и", "ы"}));
    for (const char* t : {"а", "я", "ь"}) a.push_back(strip_append(t, 1, {"и", "ы"}));
    a.push_back(strip_append("о", 1, {"а"}));
    a.push_back(strip_append("е", 1, {"я"}));
    // conjugation and past participle
    auto conj = suffixes({"у", "ю", "ешь", "ишь", "ет", "ит", "ем", "им", "ете", "ите", "ут", "ют", "ат", "ят",
                          "нный", "нная"});
    a.push_back(group("ти", 2, conj));
    a.push_back(group("ть", 2, conj));
    a.push_back(group("ить", 3, conj));
    // declension
    a.push_back(group("а", 1, suffixes({"е", "у", "ой"})));
    a.push_back(group("я", 1, suffixes({"е", "ю", "ей"})));
    a.push_back(group("ы", 1, suffixes({"ам", "ами", "ах"})));
    a.push_back(group("и", 1, suffixes({"ь", "ям", "ями", "ях"})));
    // adjective comparison and gender
    for (const char* t : {"ый", "ой", "ий"}) a.push_back(group(t, 2, suffixes({"ь", "ее", "ые"})));
    a.push_back(group("ая", 2, suffixes({"ее", "ые", "ый"})));
    a.push_back(group("ое", 2, suffixes({"ый", "ые", "ая"})));

    r.repel_prefixes = {"не", "анти"};
    return r;
}

void push_unique(std::vector<std::string>& out, std::string candidate, std::string_view word) {
    if (candidate == word) return;
    if (std::find(out.begin(), out.end(), candidate) != out.end()) return;
    out.push_back(std::move(candidate));
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t end = text.find(sep, pos);
        out.emplace_back(text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    return out;
}

std::string join(const std::vector<std::string>& items, char sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

}  // namespace

Language parse_language(std::string_view code) {
    if (code == "en") return Language::en;
    if (code == "de") return Language::de;
    if (code == "it") return Language::it;
    if (code == "ru") return Language::ru;
    throw Error("unsupported language: " + std::string(code));
}

std::string_view language_code(Language language) {
    switch (language) {
        case Language::en: return "en";
        case Language::de: return "de";
        case Language::it: return "it";
        case Language::ru: return "ru";
    }
    return "?";
}

std::string_view rule_kind_name(RuleKind kind) {
    switch (kind) {
        case RuleKind::append_suffixes: return "append-suffixes";
        case RuleKind::strip_then_append: return "strip-then-append";
        case RuleKind::suffix_group_cross_product: return "suffix-group-cross-product";
        case RuleKind::umlaut_plural: return "umlaut-plural";
    }
    return "?";
}

RuleKind parse_rule_kind(std::string_view name) {
    for (auto kind : {RuleKind::append_suffixes, RuleKind::strip_then_append, RuleKind::suffix_group_cross_product,
                      RuleKind::umlaut_plural}) {
        if (rule_kind_name(kind) == name) return kind;
    }
    throw Error("unknown rule kind: " + std::string(name));
}

RuleSet builtin_rules(Language language) {
    switch (language) {
        case Language::en: return english();
        case Language::de: return german();
        case Language::it: return italian();
        case Language::ru: return russian();
    }
    throw Error("unsupported language");
}

std::vector<std::string> apply_rule(const MorphRule& rule, std::string_view word) {
    const std::u32string w = utf8::decode(word);
    const std::u32string trigger = utf8::decode(rule.trigger);
    if (!ends_with(w, trigger) || w.size() <= rule.strip) return {};
    for (const auto& excluded : rule.excluded_endings)
        if (ends_with(w, utf8::decode(excluded))) return {};

    std::vector<std::string> out;
    switch (rule.kind) {
        case RuleKind::append_suffixes:
        case RuleKind::strip_then_append:
        case RuleKind::suffix_group_cross_product: {
            std::size_t keep = rule.kind == RuleKind::append_suffixes ? w.size() : w.size() - rule.strip;
            std::string stem = utf8::encode(std::u32string_view(w).substr(0, keep));
            for (const auto& v : rule.variants) push_unique(out, v.prefix + stem + v.suffix, word);
            break;
        }
        case RuleKind::umlaut_plural: {
            std::size_t at = w.find_last_of(U"aou");
            if (at == std::u32string::npos) break;
            std::u32string umlauted = w;
            umlauted[at] = umlauted[at] == U'a' ? U'ä' : umlauted[at] == U'o' ? U'ö' : U'ü';
            std::string base = utf8::encode(umlauted);
            for (const auto& v : rule.variants) push_unique(out, v.prefix + base + v.suffix, word);
            break;
        }
    }
    return out;
}

std::vector<std::string> antonym_candidates(const RuleSet& rules, std::string_view word) {
    std::vector<std::string> out;
    for (const auto& prefix : rules.repel_prefixes) push_unique(out, prefix + std::string(word), word);
    const std::u32string w = utf8::decode(word);
    for (const auto& swap : rules.repel_suffix_swaps) {
        const std::u32string from = utf8::decode(swap.from);
        if (from.empty() || !ends_with(w, from) || w.size() == from.size()) continue;
        push_unique(out, utf8::encode(std::u32string_view(w).substr(0, w.size() - from.size())) + swap.to, word);
    }
    return out;
}

std::string format_rules(const RuleSet& rules) {
    std::ostringstream out;
    out << "language\t" << language_code(rules.language) << '\n';
    for (const auto& rule : rules.attract_rules) {
        std::vector<std::string> variants;
        for (const auto& v : rule.variants) variants.push_back(v.prefix.empty() ? v.suffix : v.prefix + "~" + v.suffix);
        out << "attract\t" << rule_kind_name(rule.kind) << '\t' << (rule.trigger.empty() ? "-" : rule.trigger) << '\t'
            << rule.strip << '\t' << join(variants, ',');
        if (!rule.excluded_endings.empty()) out << '\t' << join(rule.excluded_endings, ',');
        out << '\n';
    }
    for (const auto& prefix : rules.repel_prefixes) out << "repel-prefix\t" << prefix << '\n';
    for (const auto& swap : rules.repel_suffix_swaps) out << "repel-swap\t" << swap.from << '\t' << swap.to << '\n';
    return out.str();
}

RuleSet parse_rules(std::string_view text) {
    RuleSet rules;
    bool have_language = false;
    std::size_t line_no = 0;
    for (auto& raw : split(text, '\n')) {
        ++line_no;
        std::string line = raw;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto fields = split(line, '\t');
        auto fail = [&](const std::string& why) {
            return Error("rules line " + std::to_string(line_no) + ": " + why);
        };
        const std::string& tag = fields[0];
        if (tag == "language" && fields.size() == 2) {
            rules.language = parse_language(fields[1]);
            have_language = true;
        } else if (tag == "attract" && (fields.size() == 5 || fields.size() == 6)) {
            MorphRule rule;
            rule.kind = parse_rule_kind(fields[1]);
            rule.trigger = fields[2] == "-" ? "" : fields[2];
            try {
                rule.strip = std::stoul(fields[3]);
            } catch (const std::exception&) {
                throw fail("bad strip count '" + fields[3] + "'");
            }
            if (!rule.trigger.empty() && rule.strip > utf8::decode(rule.trigger).size())
                throw fail("strip exceeds trigger length");
            for (const auto& v : split(fields[4], ',')) {
                if (v.empty()) throw fail("empty variant");
                auto tilde = v.find('~');
                if (tilde == std::string::npos)
                    rule.variants.push_back({"", v});
                else
                    rule.variants.push_back({v.substr(0, tilde), v.substr(tilde + 1)});
            }
            if (fields.size() == 6) rule.excluded_endings = split(fields[5], ',');
            rules.attract_rules.push_back(std::move(rule));
        } else if (tag == "repel-prefix" && fields.size() == 2 && !fields[1].empty()) {
            rules.repel_prefixes.push_back(fields[1]);
        } else if (tag == "repel-swap" && fields.size() == 3 && !fields[1].empty()) {
            rules.repel_suffix_swaps.push_back({fields[1], fields[2]});
        } else {
            throw fail("unrecognised record");
        }
    }
    if (!have_language) throw Error("rules file has no language line");
    return rules;
}

RuleSet load_rules(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open rules file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_rules(buffer.str());
}

}  // namespace morphfit
