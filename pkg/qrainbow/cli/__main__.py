"""
qrainbow CLI - 主入口模块

支持 python -m qrainbow.cli 的执行方式
"""

from . import main

if __name__ == "__main__":
    main()
