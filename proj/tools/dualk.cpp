#include <iostream>

#include "CLI11.hpp"

#include "dualk/cli.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Dual complexes of SNC divisors and KH/K reports"};
    std::string input;
    std::string command;
    std::string emit = "text";
    dualk::cli::RunOptions options;
    app.add_option("--input", input, "input JSON document")->required();
    app.add_option("--command", command, "command to run")
        ->required()
        ->check(CLI::IsMember(dualk::cli::commands()));
    app.add_option("--emit", emit, "output format")->check(CLI::IsMember({"text", "json", "both"}));
    app.add_option("--max-blowups", options.max_blowups, "blowup cap for resolve")->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        const dualk::cli::InputDocument doc = dualk::cli::parse_input(input);
        const dualk::cli::CommandResult result = dualk::cli::run(command, doc, options);
        std::cout << dualk::cli::render(result, *dualk::cli::parse_emit(emit));
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return dualk::cli::exit_code_for(e);
    }
}
