"""
运行配置
默认值 → 环境变量 → 命令行覆盖
"""

import logging
import os
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, ValidationError

from errors import ConfigError

ENV_PREFIX = "HEPTASPEC_"


class HeptaConfig(BaseModel):
    """计算规模与审计配置"""
    max_exact_n: int = Field(default=30, ge=1, description="精确预言机（电阻、矩阵树、特征多项式）的 n 上限")
    transform_check_n: int = Field(default=30, ge=0, description="逐元素校验 T·L·T' 的 n 上限，超出后抽样")
    product_check_n: int = Field(default=10, ge=0, description="精确校验特征多项式乘积分解的 n 上限")
    minor_audit_full_n: int = Field(default=4, ge=0, description="删除主子式全量审计的 n 上限")
    minor_audit_samples: int = Field(default=32, ge=1, description="超出上限时抽样审计的个数")
    enumerate_max_edges: int = Field(default=25, ge=1, description="生成树暴力枚举的边数上限")
    transform_samples: int = Field(default=16, ge=1, description="抽样校验 T·L·T' 的行数")
    seed: int = Field(default=2019, description="抽样审计的随机种子")

    @staticmethod
    def load_config(**overrides: Optional[Any]) -> "HeptaConfig":
        """加载配置：环境变量 HEPTASPEC_<FIELD> 优先于默认值，显式参数优先于环境变量"""
        values: Dict[str, Any] = {}
        for name in HeptaConfig.model_fields:
            raw = os.environ.get(f"{ENV_PREFIX}{name.upper()}")
            if raw is None or raw.strip() == "":
                continue
            try:
                values[name] = int(raw)
            except ValueError as e:
                raise ConfigError(f"环境变量 {ENV_PREFIX}{name.upper()} 不是整数: {raw!r}") from e

        values.update({k: v for k, v in overrides.items() if v is not None})

        try:
            config = HeptaConfig(**values)
        except ValidationError as e:
            raise ConfigError(f"配置非法: {e}") from e

        logging.debug(f"配置: {config.model_dump()}")
        return config
