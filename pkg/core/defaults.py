"""默认配置常量"""

# 图的顶点数上限（邻接位向量宽度）
MAX_ORDER = 30

# 搜索预算默认值：每个图 5 秒 / 10^7 节点
DEFAULT_BUDGET_SECONDS = 5.0
DEFAULT_BUDGET_NODES = 10**7
BUDGET_ENV_VAR = "CHOOSABILITY_BUDGET"

# choosable 命令未给 --r / --f 时检查 d_1-可选性
DEFAULT_R = 1

# JSON 输出格式版本
JSON_SCHEMA = "choosability/1"

# 退出码
EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INDETERMINATE = 2
EXIT_USAGE = 64

# 并行度上限
MAX_PARALLELISM = 64

# 骡子目录：宣称的参数（仅作核对，与边表计算结果不符时发出转录告警）
MULE_CATALOG = {
    "M61": {"file": "M61.txt", "k": 6, "order": 12, "size": 34, "delta": 6, "omega": 5, "chi": 6},
    "M71": {"file": "M71.txt", "k": 7, "order": 14, "size": 46, "delta": 7, "omega": 6, "chi": 7},
    "M72": {"file": "M72.txt", "k": 7, "order": 13, "size": 44, "delta": 7, "omega": 6, "chi": 7},
    "M8": {"file": "M8.txt", "k": 8, "order": 15, "size": 60, "delta": 8, "omega": 6, "chi": 8},
}

# 与 blown_cycle 的结构对照
MULE_BLOWN_CYCLES = {
    "M72": (2, 3, 2, 3, 3),
    "M8": (3, 3, 3, 3, 3),
}

# 具名联图表：(A, B, 是否 d_1-可选)
NAMED_JOIN_TABLE = [
    ("K3", "P4", True),
    ("K3", "antipaw", True),
    ("E2", "2P3", True),
    ("K2", "C4", True),
    ("K2", "antichair", True),
    ("K6", "E3", True),
    ("K4", "E3", False),
    ("K5", "E3", False),
    ("K4", "claw", False),
]

# 分类扫描的默认参数
SWEEP_MAX_ORDER = 5
SWEEP_FAMILIES = ("kt", "k3", "e2")
