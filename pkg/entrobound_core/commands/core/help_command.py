# entrobound_core/commands/core/help_command.py
import argparse
import logging
from typing import Any, Dict, List

from entrobound_core.commands.command_handler import command_categories
from entrobound_core.commands.run_config import CommandContext
from entrobound_core.errors import EXIT_OK, SpecParseError

logger = logging.getLogger("entrobound.commands.help")

COMMAND_DEFINITIONS = [
    {
        "name": "help",
        "handler": "handle_help_command",
        "arguments": "add_help_arguments",
        "help": {
            "usage": "entrobound help [command|category]",
            "description": "Displays general help, the commands of a category, or help for one command.",
            "aliases": ["h"],
        },
    }
]


def add_help_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("topic", nargs="?", default=None, help="A command name or a category name.")


def format_help_text_for_display(name: str, help_data: Dict[str, Any]) -> str:
    usage = help_data.get("usage", name)
    description = help_data.get("description") or help_data.get("summary") or "No description provided."
    lines = [f"Usage: {usage}", f"  Description: {description}"]
    aliases = help_data.get("aliases", [])
    if aliases:
        lines.append(f"  Aliases: {', '.join(aliases)}")
    if help_data.get("category"):
        lines.append(f"  Category: {help_data['category']}")
    return "\n".join(lines)


def _general_help(context: CommandContext) -> List[str]:
    registry = context.registry
    lines = ["Help Categories:"]
    for category, names in command_categories(registry):
        lines.append(f"\n{category}:")
        for name in names:
            lines.append(f"  {name:<10} {registry.summary(name)}")
    lines.append("\nUse 'entrobound help <category>' or 'entrobound help <command>' for more details.")
    return lines


def handle_help_command(context: CommandContext) -> int:
    registry = context.registry
    topic = (context.run.topic or "").strip().lower()

    if not topic:
        lines = _general_help(context)
    else:
        categories = {category.lower(): (category, names) for category, names in command_categories(registry)}
        if topic in categories:
            category, names = categories[topic]
            lines = [f"Commands in category '{category}':"]
            for name in names:
                lines.append(f"  {name:<10} {registry.summary(name)}")
        else:
            help_data = registry.get_help_text_for_command(topic)
            if help_data is None:
                logger.info(f"No help found for '{topic}'")
                raise SpecParseError(f"no help for '{topic}'; try 'entrobound help'")
            lines = [format_help_text_for_display(topic, help_data)]

    context.stream.write("\n".join(lines) + "\n")
    return EXIT_OK
