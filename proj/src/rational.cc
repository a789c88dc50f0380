#include <cyclic/rational.hh>

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace cyclic
{
    auto parse_rational(std::string_view text) -> Rational
    {
        std::string s(text);
        if (s.empty())
            throw std::invalid_argument("empty rational");
        auto slash = s.find('/');
        auto is_int = [](const std::string & part) {
            std::size_t i = (! part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
            if (i == part.size())
                return false;
            for (; i < part.size(); ++i)
                if (part[i] < '0' || part[i] > '9')
                    return false;
            return true;
        };
        std::string num = s.substr(0, slash), den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (! is_int(num) || ! is_int(den) || den[0] == '-' || den[0] == '+')
            throw std::invalid_argument("malformed rational '" + s + "'");
        if (num[0] == '+')
            num.erase(0, 1);
        mpz_class n(num), d(den);
        if (d == 0)
            throw std::invalid_argument("zero denominator in '" + s + "'");
        Rational q(n, d);
        q.canonicalize();
        return q;
    }

    auto to_string(const Rational & q) -> std::string
    {
        if (q.get_den() == 1)
            return q.get_num().get_str();
        return q.get_num().get_str() + "/" + q.get_den().get_str();
    }

    auto to_decimal(const Rational & q, int digits) -> std::string
    {
        mpf_class f(q, 128);
        std::ostringstream out;
        out << std::fixed << std::setprecision(digits) << f;
        return out.str();
    }
}
