#include "elp/generators.hpp"

#include "elp/errors.hpp"
#include "elp/parser.hpp"

#include <sstream>

namespace elp {

std::string gen_eligible(int n) {
    if (n < 1) {
        throw ContractError("gen_eligible: need at least one student");
    }
    std::ostringstream out;
    for (int i = 1; i <= n; ++i) {
        const std::string s = "s" + std::to_string(i);
        out << "fairGPA(" << s << ") or highGPA(" << s << ").\n"
            << "eligible(" << s << ") :- highGPA(" << s << ").\n"
            << "eligible(" << s << ") :- minority(" << s << "), fairGPA(" << s << ").\n"
            << "-eligible(" << s << ") :- -fairGPA(" << s << "), -highGPA(" << s << ").\n"
            << "interview(" << s << ") :- not K eligible(" << s << "), not K -eligible(" << s << ").\n";
    }
    return out.str();
}

Program eligible_program(int n) { return parse_elp(gen_eligible(n)); }

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return bound == 0 ? 0 : rng() % bound; }

Literal random_literal(std::mt19937_64& rng, std::size_t atoms, bool classical) {
    const std::string name(1, static_cast<char>('a' + draw(rng, atoms)));
    const bool neg = classical && draw(rng, 4) == 0;
    return make_literal(name, {}, neg);
}

Program random_program(std::mt19937_64& rng, const RandomElpOptions& o, bool subjective, bool nested) {
    if (o.max_atoms == 0 || o.max_atoms > 26 || o.max_rules == 0) {
        throw ContractError("random program: need 1..26 atoms and at least one rule");
    }
    const std::size_t atoms = 1 + draw(rng, o.max_atoms);
    const std::size_t rules = 1 + draw(rng, o.max_rules);
    std::size_t subjective_left = subjective ? draw(rng, o.max_subjective + 1) : 0;
    Program p;
    for (std::size_t r = 0; r < rules; ++r) {
        // Head: mostly one literal, sometimes a disjunction or a constraint.
        std::size_t head_size = 1;
        switch (draw(rng, 8)) {
        case 0:
            head_size = 0;
            break;
        case 1:
        case 2:
            head_size = 2;
            break;
        default:
            break;
        }
        std::vector<Literal> head;
        for (std::size_t i = 0; i < head_size; ++i) {
            head.push_back(random_literal(rng, atoms, o.classical_negation));
        }
        std::size_t body_size = draw(rng, 4);
        if (head.empty() && body_size == 0) {
            body_size = 1;
        }
        std::vector<BodyElement> body;
        for (std::size_t i = 0; i < body_size; ++i) {
            Literal l = random_literal(rng, atoms, o.classical_negation);
            if (subjective_left > 0 && draw(rng, 3) == 0) {
                --subjective_left;
                const Modality m = draw(rng, 2) == 0 ? Modality::K : Modality::M;
                body.push_back(BodyElement::subjective(m, std::move(l), static_cast<int>(draw(rng, 2))));
            } else {
                const int depth = static_cast<int>(draw(rng, nested ? 3 : 2));
                body.push_back(BodyElement::objective(std::move(l), depth));
            }
        }
        p.rules.emplace_back(std::move(head), std::move(body));
    }
    // Spend the remaining subjective budget on fresh rules so the
    // requested count is actually reached.
    while (subjective_left > 0 && p.rules.size() < o.max_rules) {
        --subjective_left;
        const Modality m = draw(rng, 2) == 0 ? Modality::K : Modality::M;
        Literal h = random_literal(rng, atoms, o.classical_negation);
        Literal l = random_literal(rng, atoms, o.classical_negation);
        p.rules.emplace_back(std::vector<Literal>{std::move(h)},
                             std::vector<BodyElement>{BodyElement::subjective(m, std::move(l),
                                                                              static_cast<int>(draw(rng, 2)))});
    }
    return p;
}

} // namespace

Program random_elp(std::mt19937_64& rng, const RandomElpOptions& options) {
    return random_program(rng, options, true, false);
}

Program random_asp(std::mt19937_64& rng, const RandomElpOptions& options) {
    return random_program(rng, options, false, true);
}

} // namespace elp
