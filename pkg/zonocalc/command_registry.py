# This module is the central table of every command the CLI can run.
import logging
from typing import Callable, Dict, List, Optional

from .model.types import CommandName
from .utils.utils import str_to_enum

# Configure logger for the registry
logger = logging.getLogger("CommandRegistry")


class CommandRegistry:
    """
    Maps command names to their handlers. Handlers register themselves with
    the ``command`` decorator when the commands module is imported.
    """
    def __init__(self):
        # {command_name: handler}
        self._handlers: Dict[CommandName, Callable] = {}

    def register(self, name: CommandName, handler: Callable):
        """Adds a handler to the registry."""
        if name in self._handlers and self._handlers[name] is not handler:
            logger.warning(f"Replacing handler for command {name.value}")
        self._handlers[name] = handler
        logger.debug(f"Registered command {name.value}: {handler.__name__}")

    def command(self, name: CommandName):
        def decorator(handler: Callable) -> Callable:
            self.register(name, handler)
            return handler
        return decorator

    def get_handler(self, name) -> Optional[Callable]:
        """Returns the handler of a command given as enum or string."""
        command = str_to_enum(CommandName, name)
        if command is not None and command in self._handlers:
            return self._handlers[command]
        logger.warning(f"No handler registered for command {name}.")
        return None

    def names(self) -> List[str]:
        return [name.value for name in self._handlers]


# Instantiate a single registry to be used across the application
command_registry = CommandRegistry()
