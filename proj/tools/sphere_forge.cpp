// sphere-forge: computations in bounded derived categories of path
// algebras of acyclic quivers, driven by a JSON workspace file.
//
// Usage:
//   sphere-forge <workspace.json> <command> [args...] [flags]
//
// Exit codes: 0 success, 1 assertion failure, 2 usage or parse error.

#include "sphereforge/verify.hpp"

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace sphereforge;

namespace {

constexpr const char* kSchema = "sphere-forge/1";

struct Args {
    std::string workspace;
    std::string command;
    std::vector<std::string> positional;
    std::string format = "json";
    std::string flavor_opt;
    std::vector<std::string> roster;
    std::vector<std::string> probes;
    std::optional<std::uint64_t> seed;
};

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

[[noreturn]] void usage_error(const std::string& msg) {
    throw ParseError(msg);
}

Args parse_args(int argc, char** argv) {
    Args args;
    std::vector<std::string> plain;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        auto need_value = [&](const char* flag) -> std::string {
            if (i + 1 >= argc) usage_error(std::string(flag) + " needs a value");
            return argv[++i];
        };
        if (a == "--format")
            args.format = need_value("--format");
        else if (a == "--seed")
            args.seed = std::stoull(need_value("--seed"));
        else if (a == "--roster")
            args.roster = split_names(need_value("--roster"));
        else if (a == "--probes")
            args.probes = split_names(need_value("--probes"));
        else if (a == "--flavor")
            args.flavor_opt = need_value("--flavor");
        else if (a.rfind("--", 0) == 0)
            usage_error("unknown flag '" + a + "'");
        else
            plain.push_back(std::move(a));
    }
    if (plain.size() < 2)
        usage_error("usage: sphere-forge <workspace.json> <command> [args...]");
    args.workspace = plain[0];
    args.command = plain[1];
    args.positional.assign(plain.begin() + 2, plain.end());
    if (args.format != "json" && args.format != "dot")
        usage_error("--format must be json or dot");
    return args;
}

void expect_args(const Args& a, std::size_t n, const std::string& shape) {
    if (a.positional.size() != n)
        usage_error("command '" + a.command + "' expects: " + shape);
}

Json envelope(const Args& a) {
    Json out;
    out["schema"] = kSchema;
    out["command"] = a.command;
    return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int run(const Args& args) {
    Workspace ws = load_workspace(args.workspace);
    if (args.seed) ws.seed = *args.seed;
    const std::uint64_t seed = ws.seed;

    const std::string& cmd = args.command;
    if (cmd == "hom") {
        expect_args(args, 2, "hom X Y");
        Json out = envelope(args);
        out["source"] = args.positional[0];
        out["target"] = args.positional[1];
        out["dims"] =
            dims_json(hom_dims(ws.object(args.positional[0]), ws.object(args.positional[1])));
        emit(out);
    } else if (cmd == "serre") {
        expect_args(args, 1, "serre X");
        Json out = envelope(args);
        out["object"] = args.positional[0];
        out["result"] = dobject_json(serre(ws.object(args.positional[0])));
        emit(out);
    } else if (cmd == "serre-inverse") {
        expect_args(args, 1, "serre-inverse X");
        Json out = envelope(args);
        out["object"] = args.positional[0];
        out["result"] = dobject_json(serre_inverse(ws.object(args.positional[0])));
        emit(out);
    } else if (cmd == "detect") {
        expect_args(args, 1, "detect X");
        SpherelikeProfile p = detect(ws.object(args.positional[0]), seed);
        Json out = envelope(args);
        out["object"] = args.positional[0];
        switch (p.kind) {
            case SpherelikeProfile::Kind::exceptional: out["kind"] = "exceptional"; break;
            case SpherelikeProfile::Kind::spherelike:
                out["kind"] = "spherelike";
                out["degree"] = p.degree;
                break;
            case SpherelikeProfile::Kind::neither: out["kind"] = "neither"; break;
        }
        if (p.cy_degree)
            out["cy_degree"] = *p.cy_degree;
        else
            out["cy_degree"] = nullptr;
        out["spherical"] = p.spherical();
        emit(out);
    } else if (cmd == "twist") {
        expect_args(args, 2, "twist A X");
        Json out = envelope(args);
        out["functor_object"] = args.positional[0];
        out["argument"] = args.positional[1];
        out["result"] = dobject_json(
            twist_object(ws.object(args.positional[0]), ws.object(args.positional[1])));
        emit(out);
    } else if (cmd == "mutate-left" || cmd == "mutate-right") {
        expect_args(args, 2, cmd + " E X");
        const DObject& e = ws.object(args.positional[0]);
        const DObject& x = ws.object(args.positional[1]);
        Json out = envelope(args);
        out["through"] = args.positional[0];
        out["object"] = args.positional[1];
        out["result"] =
            dobject_json(cmd == "mutate-left" ? left_mutation(e, x) : right_mutation(e, x));
        emit(out);
    } else if (cmd == "sod-project") {
        expect_args(args, 2, "sod-project EMB X");
        SodTriangles sod =
            sod_project(ws.embedding(args.positional[0]), ws.object(args.positional[1]));
        Json out = envelope(args);
        out["embedding"] = args.positional[0];
        out["object"] = args.positional[1];
        out["fr"] = dobject_json(sod.frb);
        out["t"] = dobject_json(sod.tb);
        out["tprime"] = dobject_json(sod.tpb);
        out["fl"] = dobject_json(sod.flb);
        emit(out);
    } else if (cmd == "p-op") {
        expect_args(args, 2, "p-op EMB X");
        DObject p = p_operator(ws.embedding(args.positional[0]), ws.object(args.positional[1]));
        Json out = envelope(args);
        out["embedding"] = args.positional[0];
        out["object"] = args.positional[1];
        out["is_zero"] = p.is_zero();
        out["result"] = dobject_json(p);
        emit(out);
    } else if (cmd == "asphericity") {
        expect_args(args, 2, "asphericity A d");
        int d = 0;
        try {
            d = std::stoi(args.positional[1]);
        } catch (const std::exception&) {
            usage_error("asphericity: degree must be an integer");
        }
        AsphericityData asp = asphericity(ws.object(args.positional[0]), d, seed);
        Json out = envelope(args);
        out["object"] = args.positional[0];
        out["degree"] = d;
        out["q"] = dobject_json(asp.q);
        out["q_is_zero"] = asp.q.is_zero();
        out["serre_shifted"] = dobject_json(asp.serre_shifted);
        emit(out);
    } else if (cmd == "member") {
        Flavor flavor = parse_flavor(args.positional.empty() ? "" : args.positional[0]);
        bool member = false;
        Json out = envelope(args);
        out["flavor"] = flavor_name(flavor);
        if (flavor == Flavor::frb_codomain) {
            expect_args(args, 3, "member frb-codomain EMB B");
            out["embedding"] = args.positional[1];
            out["probe"] = args.positional[2];
            member = frb_codomain_member(ws.embedding(args.positional[1]),
                                         ws.object(args.positional[2]));
        } else if (flavor == Flavor::sph_subcat) {
            expect_args(args, 4, "member sph-subcat EMB A B");
            out["embedding"] = args.positional[1];
            out["source"] = args.positional[2];
            out["probe"] = args.positional[3];
            const DObject& a = ws.object(args.positional[2]);
            SpherelikeProfile p = detect(a, seed);
            if (p.kind != SpherelikeProfile::Kind::spherelike)
                throw Error("member sph-subcat: source object is not spherelike");
            member = sph_subcat_member(ws.object(args.positional[3]),
                                       asphericity(a, p.degree, seed));
        } else {
            expect_args(args, 4, "member FLAVOR EMB A B");
            out["embedding"] = args.positional[1];
            out["source"] = args.positional[2];
            out["probe"] = args.positional[3];
            const ExcEmbedding& emb = ws.embedding(args.positional[1]);
            const DObject& a = ws.object(args.positional[2]);
            const DObject& b = ws.object(args.positional[3]);
            if (flavor == Flavor::frbO)
                member = frbO_member(emb, a, b);
            else if (flavor == Flavor::frbOd)
                member = frbOd_member(emb, a, b);
            else if (flavor == Flavor::sph_codomain)
                member = sph_codomain_member(emb, a, b, seed);
            else
                member = sphO_member(emb, a, b, true, seed);
        }
        out["member"] = member;
        emit(out);
    } else if (cmd == "decompose") {
        expect_args(args, 2, "decompose EMB B");
        auto [img, orth] =
            frb_decompose(ws.embedding(args.positional[0]), ws.object(args.positional[1]));
        Json out = envelope(args);
        out["embedding"] = args.positional[0];
        out["object"] = args.positional[1];
        out["image_part"] = dobject_json(img);
        out["orthogonal_part"] = dobject_json(orth);
        emit(out);
    } else if (cmd == "poset") {
        expect_args(args, 1, "poset EMB --roster a,b,... --probes x,y,...");
        if (args.roster.empty()) usage_error("poset needs --roster");
        if (args.probes.empty()) usage_error("poset needs --probes");
        Flavor flavor = args.flavor_opt.empty() ? Flavor::frbO : parse_flavor(args.flavor_opt);
        std::vector<NamedObject> roster, probes;
        for (const std::string& n : args.roster) roster.push_back({n, ws.object(n)});
        for (const std::string& n : args.probes) probes.push_back({n, ws.object(n)});
        NbhdPoset poset = poset_build(ws.embedding(args.positional[0]), roster, probes, flavor);
        if (args.format == "dot") {
            std::cout << poset_dot(poset);
        } else {
            Json out = envelope(args);
            out["embedding"] = args.positional[0];
            Json pj = poset_json(poset, flavor);
            for (auto& [k, v] : pj.items()) out[k] = v;
            emit(out);
        }
    } else if (cmd == "verify") {
        expect_args(args, 1, "verify SUITE");
        SuiteReport report = run_suite(args.positional[0], ws);
        Json out = envelope(args);
        Json rj = report.to_json();
        for (auto& [k, v] : rj.items()) out[k] = v;
        emit(out);
        return report.ok() ? 0 : 1;
    } else if (cmd == "list") {
        expect_args(args, 0, "list");
        Json out = envelope(args);
        Json names = Json::array();
        for (auto& [name, obj] : ws.objects) names.push_back(name);
        out["objects"] = std::move(names);
        Json embs = Json::array();
        for (auto& [name, emb] : ws.embeddings) embs.push_back(name);
        out["embeddings"] = std::move(embs);
        Json suitesj = Json::array();
        for (const std::string& s : suite_names()) suitesj.push_back(s);
        out["suites"] = std::move(suitesj);
        emit(out);
    } else {
        usage_error("unknown command '" + cmd + "'");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        Args args = parse_args(argc, argv);
        return run(args);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
