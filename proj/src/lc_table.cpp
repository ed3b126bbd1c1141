#include "circmine/lc_table.hpp"

#include <map>

namespace circmine {

const std::vector<CategoryRecord>& builtin_lc_table() {
    static const std::vector<CategoryRecord> table = {
        // Top-level classes
        {"A", "General Works"},
        {"B", "Philosophy, Psychology, Religion"},
        {"C", "Auxiliary Science of History"},
        {"D", "World History"},
        {"E", "History of the Americas"},
        {"F", "History of the Americas"},
        {"G", "Geography, Anthropology, Recreation"},
        {"H", "Social Sciences"},
        {"J", "Political Sciences"},
        {"K", "Law"},
        {"L", "Education"},
        {"M", "Music and Books on Music"},
        {"N", "Fine Arts"},
        {"P", "Language and Literature"},
        {"Q", "Science"},
        {"R", "Medicine"},
        {"S", "Agriculture"},
        {"T", "Technology"},
        {"U", "Military Science"},
        {"V", "Naval Science"},
        {"Z", "Bibliography, Library Science, etc."},
        // Named subclasses
        {"HB", "Economic Theory, Demography"},
        {"HD", "Industries, Land Use, Labor"},
        {"HF", "Commerce"},
        {"HG", "Finance"},
        {"KP", "Law in Asia & Eurasia, Africa, Pacific Asia & Antarctica"},
        {"PE", "English"},
        {"QA", "Mathematics"},
        {"QC", "Physics"},
        {"QD", "Chemistry"},
        {"QH", "Biology"},
        {"QL", "Zoology"},
        {"QM", "Human Anatomy"},
        {"QP", "Physiology"},
        {"QR", "Microbiology"},
        {"TA", "Civil Engineering"},
        {"TJ", "Mechanical Engineering"},
        {"TK", "Electrical Engineering"},
    };
    return table;
}

const std::string& lc_class_letters() {
    static const std::string letters = "ABCDEFGHJKLMNPQRSTUVZ";
    return letters;
}

bool is_lc_class_letter(char c) {
    return lc_class_letters().find(c) != std::string::npos;
}

std::optional<std::string_view> lc_description(std::string_view code) {
    static const std::map<std::string, std::string, std::less<>>& index = [] {
        static std::map<std::string, std::string, std::less<>> m;
        for (const auto& rec : builtin_lc_table())
            m.emplace(rec.category_code, rec.description);
        return m;
    }();
    auto it = index.find(code);
    if (it == index.end()) return std::nullopt;
    return std::string_view(it->second);
}

bool is_classifiable_code(std::string_view code) {
    if (code.empty() || code.size() > 3) return false;
    for (char c : code)
        if (c < 'A' || c > 'Z') return false;
    return is_lc_class_letter(code.front());
}

}  // namespace circmine
