"""Config loading shared by the commands."""

from typing import Optional, Tuple

from ..run_config import RunConfig
from ..utils import RunMeta


def load_run(config_path: str, command: str, seed: Optional[int] = None) -> Tuple[RunConfig, RunMeta]:
    config = RunConfig.load(config_path)
    return config, RunMeta(command, config.config_hash(), seed)
