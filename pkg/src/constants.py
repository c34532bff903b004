CONFIG_FILE: str = "config.json"
LOGGER_NAME: str = "batchsched"

INSTANCE_SETS: tuple[str, ...] = ("K2008", "K2008u", "H2017")
FORMULATIONS: tuple[str, ...] = ("abf", "tif", "tifv", "tifm", "spf")
METHODS: tuple[str, ...] = ("oracle", "sk", "cgh", "ps", "bnp", "tbnp", "abf", "tif", "tifv", "tifm", "spf")
BENCH_METHODS: tuple[str, ...] = METHODS + ("lblp",)

# Variable and row names shared by the builders, the decoders and the restricted master
SUPER_COLUMN_PREFIX: str = "super"
OMEGA_NAME: str = "omega"
CUTOFF_ROW_NAME: str = "cutoff"

PROGRESS_BAR_FORMAT: str = "{desc}: {n_fmt}/{total_fmt} [{elapsed}<{remaining}]"
