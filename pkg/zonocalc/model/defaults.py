from ..utils.utils import env_int, str_to_enum
from .types import CommandName


class CommandDefaultsRegistry:
    """
    Per-command tunables. Commands without an entry fall back to the default.
    """

    def __init__(self):

        # -------- Default Tunables --------
        self.DEFAULT_TUNABLES = {
            "truncation_margin": 0,
            "grid_dilation": 2,
            "window_padding": 1,
            "box_radius": 3,
            "index_radius": 3,
            "atiyah_radius": 6,
            "vertex_sum_radius": 6,
            "oracle_samples": 20,
            "random_trials": 5,
            "unimodular_trials": 10,
            "random_radius": 2,
            "oracle_radius": 8,
            "faces_per_system": 2,
            "seed": env_int("ZONOCALC_SEED", 20240601),
            "emit_grid": None,
        }

        # -------- Command Overrides --------
        self.COMMAND_TUNABLES = {

            CommandName.BOX: {
                **self.DEFAULT_TUNABLES,
                "window_padding": 1,
            },

            CommandName.MULTISPLINE: {
                **self.DEFAULT_TUNABLES,
                "window_padding": 2,
            },

            CommandName.PARTITION: {
                **self.DEFAULT_TUNABLES,
                "box_radius": 6,
            },

            CommandName.BRION_VERGNE: {
                **self.DEFAULT_TUNABLES,
                "box_radius": 6,
            },

            CommandName.INDEX: {
                **self.DEFAULT_TUNABLES,
                "box_radius": 4,
            },

            CommandName.VERIFY: {
                **self.DEFAULT_TUNABLES,
                "box_radius": 5,
                "random_radius": 3,
            },

            CommandName.SAMPLE: {
                **self.DEFAULT_TUNABLES,
                "emit_grid": 4,
            },
        }

    def get_defaults(self, command: CommandName | str) -> dict:
        """
        Returns the tunables of a command.
        Falls back to the defaults if not found.
        """

        command = str_to_enum(CommandName, command)
        if command is None:
            return self.DEFAULT_TUNABLES

        return self.COMMAND_TUNABLES.get(command, self.DEFAULT_TUNABLES)


# Global instance
command_defaults = CommandDefaultsRegistry()
