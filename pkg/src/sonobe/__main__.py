from sonobe.cli import main_entry

main_entry()
