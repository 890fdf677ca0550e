# entrobound_core/commands/command_handler.py
import argparse
import configparser
import importlib
import json
import logging
import os
import pkgutil
import sys
from typing import TYPE_CHECKING, Any, Callable, Dict, List, Optional, TextIO, Tuple

import entrobound_core
import entrobound_core.commands
from entrobound_core.commands.run_config import CommandContext, RunConfig
from entrobound_core.errors import EXIT_FAILURE, EntroboundError, InvariantViolationError
from entrobound_core.output.report_writer import OUTPUT_FORMATS, ReportWriter

if TYPE_CHECKING:
    from entrobound_core.app_config import AppConfig

logger = logging.getLogger("entrobound.command_handler")

HELP_INI_FILENAME = "command_help.ini"
# relative to the entrobound_core package directory
HELP_INI_PATH = os.path.join("data", "default_help", HELP_INI_FILENAME)

CommandCallable = Callable[[CommandContext], int]
ArgumentsCallable = Callable[[argparse.ArgumentParser], None]


class CommandHandler:
    """Discovers command modules under entrobound_core.commands and dispatches to them.

    A command module exposes COMMAND_DEFINITIONS, a list of
    {"name", "handler", "arguments", "help": {"usage", "description", "aliases"}}
    entries naming functions defined in the same module.
    """

    def __init__(self, config: "AppConfig"):
        self.config = config
        self.command_map: Dict[str, CommandCallable] = {}
        self.argument_builders: Dict[str, ArgumentsCallable] = {}
        self.registered_command_help: Dict[str, Dict[str, Any]] = {}
        self.ini_help_texts: Dict[str, Dict[str, str]] = {}
        self._load_help_texts()

        logger.debug(f"Discovering commands in package {entrobound_core.commands.__name__}")
        for _, module_name, is_pkg in pkgutil.walk_packages(
            path=entrobound_core.commands.__path__,
            prefix=entrobound_core.commands.__name__ + ".",
            onerror=lambda name: logger.error(f"Error importing module during walk_packages: {name}"),
        ):
            if is_pkg:
                continue
            try:
                module = importlib.import_module(module_name)
            except ImportError as e:
                logger.error(f"Failed to import command module {module_name}: {e}", exc_info=True)
                continue
            if not hasattr(module, "COMMAND_DEFINITIONS"):
                logger.debug(f"Module {module_name} does not have COMMAND_DEFINITIONS.")
                continue
            for cmd_def in module.COMMAND_DEFINITIONS:
                self._register(module, module_name, cmd_def)
        logger.debug(f"Registered commands: {', '.join(sorted(self.primary_commands()))}")

    def _register(self, module: Any, module_name: str, cmd_def: Dict[str, Any]) -> None:
        cmd_name = cmd_def["name"].lower()
        handler = getattr(module, cmd_def["handler"], None)
        if handler is None or not callable(handler):
            logger.error(f"Could not find handler '{cmd_def['handler']}' in {module_name} for command '{cmd_name}'.")
            return
        if cmd_name in self.command_map:
            logger.warning(f"Command '{cmd_name}' from {module_name} conflicts with an existing command. Overwriting.")
        self.command_map[cmd_name] = handler

        builder_name = cmd_def.get("arguments")
        if builder_name:
            builder = getattr(module, builder_name, None)
            if builder is None or not callable(builder):
                logger.error(f"Could not find argument builder '{builder_name}' in {module_name}.")
            else:
                self.argument_builders[cmd_name] = builder

        help_info = cmd_def.get("help") or {}
        aliases = [alias.lower() for alias in help_info.get("aliases", [])]
        self.registered_command_help[cmd_name] = {
            "usage": help_info.get("usage", cmd_name),
            "description": help_info.get("description", ""),
            "aliases": aliases,
            "is_alias": False,
            "module_path": module_name,
        }
        for alias in aliases:
            self.command_map[alias] = handler
            self.registered_command_help[alias] = {
                **self.registered_command_help[cmd_name],
                "aliases": [cmd_name] + [other for other in aliases if other != alias],
                "is_alias": True,
                "primary_command": cmd_name,
            }
        logger.debug(f"Registered command '{cmd_name}' (aliases: {aliases}) from {module_name}")

    def _load_help_texts(self) -> None:
        help_ini_full_path = os.path.join(os.path.dirname(os.path.abspath(entrobound_core.__file__)), HELP_INI_PATH)
        if not os.path.exists(help_ini_full_path):
            logger.warning(f"Help file '{help_ini_full_path}' not found. No INI help texts will be loaded.")
            return
        try:
            parser = configparser.ConfigParser()
            parser.read(help_ini_full_path, encoding="utf-8")
            for section in parser.sections():
                self.ini_help_texts[section] = {command.lower(): text for command, text in parser[section].items()}
            logger.debug(f"Loaded help texts from '{help_ini_full_path}'")
        except configparser.Error as e:
            logger.error(f"Error loading help texts from '{help_ini_full_path}': {e}", exc_info=True)

    def primary_commands(self) -> List[str]:
        return [name for name, info in self.registered_command_help.items() if not info["is_alias"]]

    def get_help_text_for_command(self, command_name: str) -> Optional[Dict[str, Any]]:
        """Definition help first, then the INI text (with its section as the category)."""
        name = command_name.lower()
        help_data = self.registered_command_help.get(name)
        if help_data is not None:
            data = dict(help_data, source="core")
            primary = data.get("primary_command", name)
            for section, texts in self.ini_help_texts.items():
                if primary in texts:
                    data["summary"] = texts[primary]
                    data["category"] = section
            return data
        for section, texts in self.ini_help_texts.items():
            if name in texts:
                return {"summary": texts[name], "category": section, "source": "ini", "aliases": []}
        return None

    def summary(self, command_name: str) -> str:
        data = self.get_help_text_for_command(command_name) or {}
        return data.get("summary") or data.get("description", "")

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="entrobound",
            allow_abbrev=False,
            description="Entropy-number bounds for diagonal operators between sequence spaces.",
        )
        parser.add_argument("--config", default=None, help="Alternative INI file (default: config/entrobound_config.ini).")

        common = argparse.ArgumentParser(add_help=False)
        common.add_argument(
            "--output",
            choices=OUTPUT_FORMATS,
            default=self.config.output_format,
            help=f"Report format. (Default: {self.config.output_format})",
        )

        subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
        subparsers.required = True
        for name in sorted(self.primary_commands()):
            help_data = self.registered_command_help[name]
            subparser = subparsers.add_parser(
                name,
                parents=[common],
                aliases=help_data["aliases"],
                help=self.summary(name),
                description=help_data["description"],
                usage=help_data["usage"],
                allow_abbrev=False,
            )
            subparser.set_defaults(command=name)
            builder = self.argument_builders.get(name)
            if builder is not None:
                builder(subparser)
        return parser

    def dispatch(self, args: argparse.Namespace, stream: Optional[TextIO] = None, err_stream: Optional[TextIO] = None) -> int:
        """Runs one command; library errors become their exit codes with a one-line message."""
        stream = stream or sys.stdout
        err_stream = err_stream or sys.stderr
        command = args.command
        handler = self.command_map.get(command)
        if handler is None:
            err_stream.write(f"entrobound: unknown command '{command}'\n")
            return EXIT_FAILURE
        try:
            run = RunConfig.from_namespace(args)
            writer = ReportWriter(run.output, self.config.float_digits)
            context = CommandContext(run, self.config, writer, stream, self)
            logger.info(f"Running '{command}' with {run.to_dict()}")
            exit_code = handler(context)
            logger.info(f"'{command}' finished with exit code {exit_code}")
            return exit_code
        except EntroboundError as e:
            logger.error(f"'{command}' failed: {type(e).__name__}: {e}")
            err_stream.write(f"entrobound {command}: {e}\n")
            if isinstance(e, InvariantViolationError) and e.counterexample:
                err_stream.write(json.dumps(e.counterexample, sort_keys=True, default=str) + "\n")
            return e.exit_code
        except Exception as e:
            logger.error(f"Unexpected error in '{command}': {e}", exc_info=True)
            err_stream.write(f"entrobound {command}: unexpected error: {e}\n")
            return EXIT_FAILURE


def command_categories(handler: CommandHandler) -> List[Tuple[str, List[str]]]:
    """(category, commands) from the help file sections, plus 'Other' for anything unlisted."""
    listed = set()
    categories = []
    for section, texts in handler.ini_help_texts.items():
        names = [name for name in texts if name in handler.registered_command_help]
        listed.update(names)
        if names:
            categories.append((section, names))
    rest = sorted(name for name in handler.primary_commands() if name not in listed)
    if rest:
        categories.append(("Other", rest))
    return categories
