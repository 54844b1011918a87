# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
class CommonArgs:
    # declared once, added to every subcommand
    GLOBAL_OPTIONS = {
        ("--log",): {"action": 'store',
                     "default": "WARNING",
                     "help": 'Provide logging level. Values: DEBUG, INFO, '
                             'WARNING (default), ERROR, CRITICAL'},
        ("--log-file",): {"action": 'store',
                          "default": None,
                          "help": 'Append the log to this file instead of '
                                  'standard error'},
    }
    OPTIONS = {
        ("--out", "-o"): {"action": 'store',
                          "default": None,
                          "help": 'Write the result to this file, with a '
                                  'manifest next to it (default: stdout)'},
        ("--format",): {"action": 'store',
                        "default": None,
                        "choices": ("text", "csv", "json"),
                        "help": 'Output format (default: from the --out '
                                'suffix, else text for single results and '
                                'csv for tables)'},
        ("--no-progress",): {"action": "store_true",
                             "help": "Do not show progress bars."},
    }
    EXCLUSIVE_OPTIONS_1 = {
        ("--verbose", "-v"): {"action": 'store_true',
                              "help": 'Print a summary next to the data'},
        ("--quiet", "-q"): {"action": 'store_true',
                            "help": 'Print nothing except the data'},
    }
    ALL_OPTIONS = {**OPTIONS, **EXCLUSIVE_OPTIONS_1}

    @staticmethod
    def add_global_arguments(parser):
        for arg, properties in CommonArgs.GLOBAL_OPTIONS.items():
            parser.add_argument(*arg, **properties)

    @staticmethod
    def add_arguments(parser):
        """
        Add common arguments to the parser.
        """
        for arg, properties in CommonArgs.OPTIONS.items():
            parser.add_argument(*arg, **properties)
        verbosity = parser.add_mutually_exclusive_group()
        for arg, properties in CommonArgs.EXCLUSIVE_OPTIONS_1.items():
            verbosity.add_argument(*arg, **properties)

    @staticmethod
    def to_cli_args(args):
        """
        Turn parsed common options back into flags, e.g. to record how a
        run was invoked.
        """
        args_dict = vars(args)

        cli_args = []
        for keys, value in CommonArgs.ALL_OPTIONS.items():
            # keys[0] since first value is used as attribute name in parser
            param_name = keys[0][2:].replace("-", "_")
            if value["action"] == "store_true":
                if args_dict[param_name]:
                    cli_args.append(keys[0])
            elif args_dict[param_name] is not None:
                cli_args.extend((keys[0], args_dict[param_name]))
        return cli_args
