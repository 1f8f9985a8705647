#include "sullivan/rational.hpp"

namespace sullivan {

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<Rat> rat_from_string(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto digits_ok = [](const std::string& t) {
        if (t.empty()) return false;
        size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (start == t.size()) return false;
        for (size_t i = start; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den)) return std::nullopt;
    mpz_class n(num), d(den);
    if (d == 0) return std::nullopt;
    Rat q(n, d);
    q.canonicalize();
    return q;
}

}  // namespace sullivan
