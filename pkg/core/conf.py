from django.conf import settings


def bell_setting(name, override=None):
    """
    Resolve a numerical default from settings.BELLKIT unless the caller
    passed an explicit value.
    """
    if override is not None:
        return override
    return settings.BELLKIT[name]
