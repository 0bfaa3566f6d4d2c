"""
验证套件模块

此目录下的所有套件会被自动发现并注册
添加新套件只需在此目录创建新的 .py 文件并用 @register_suite 装饰
"""
