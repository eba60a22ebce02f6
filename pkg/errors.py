"""
异常类型
库内所有可预期错误的统一根类
"""


class HeptaError(Exception):
    """七边形链计算错误基类"""


class DomainError(HeptaError, ValueError):
    """参数不在定义域内（n、下标、矩阵形状、共轭对等）"""


class ResourceGuardError(HeptaError):
    """超过规模上限（枚举边数、精确计算截断）"""


class DecompositionError(HeptaError):
    """内部构造缺陷：自同构或 T·L·T' 校验失败"""


class ConfigError(HeptaError, ValueError):
    """配置值非法"""
