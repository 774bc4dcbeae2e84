"""
Instance exporter for the line-oriented instance format
"""

import logging
import os
from pathlib import Path
from typing import List

from intervalsat.parameters_instance import MIsatInstance


def serialize_instance(instance: MIsatInstance) -> str:
    """
    Render an instance in the format read by InstanceParser

    Args:
        instance: Instance to render

    Returns:
        Text ending in a newline
    """
    lines: List[str] = [f"mode {instance.mode.value}"]
    lines.append(f"algebra {instance.algebra.value if instance.algebra else 'auto'}")
    for name in instance.intervals:
        lines.append(f"interval {name}")
    for edge in instance.edges:
        lines.append(f"rel {edge.source} {edge.relation} {edge.target}")
    for dlr in instance.metric:
        lines.append(f"dlr {dlr}")
    return "\n".join(lines) + "\n"


class InstanceExporter:
    """Write an instance file"""

    def __init__(self, instance: MIsatInstance, instance_name: str):
        """
        Initialize exporter

        Args:
            instance: Instance to write
            instance_name: File stem
        """
        self.instance = instance
        self.instance_name = instance_name

    def export(self, output_dir: str, overwrite: bool = True) -> bool:
        """
        Export the instance to <output_dir>/<name>.isat

        Args:
            output_dir: Target directory
            overwrite: Whether to overwrite an existing file (default: True)

        Returns:
            True if successful
        """
        try:
            Path(output_dir).mkdir(parents=True, exist_ok=True)
            file_name = os.path.join(output_dir, f"{self.instance_name.replace(' ', '_')}.isat")
            if os.path.exists(file_name) and not overwrite:
                logging.warning(f"{file_name} exists, not overwriting")
                return False
            with open(file_name, "w", encoding="utf-8") as f:
                f.write(serialize_instance(self.instance))
            logging.info(f"Exported instance to {file_name}")
            return True

        except Exception as e:
            logging.error(f"Error exporting instance: {e}", exc_info=True)
            return False
